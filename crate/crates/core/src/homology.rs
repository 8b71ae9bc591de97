//! Integer homology of the Dehn-twist mapping torus via Smith normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::{Error, Result};

/// Dense matrix of arbitrary-precision integers, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Domain("rows have unequal lengths".into()));
        }
        Ok(IntegerMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().map(|&v| BigInt::from(v)).collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| i64::try_from(self.get(i, j)).ok())
                    .collect()
            })
            .collect()
    }

    pub fn mul(&self, other: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.cols != other.rows {
            return Err(Error::Domain(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &IntegerMatrix) -> Result<IntegerMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Domain("dimension mismatch in subtraction".into()));
        }
        Ok(IntegerMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn transpose(&self) -> IntegerMatrix {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::Domain("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        Ok(if n == 0 { BigInt::one() } else { sign * a.get(n - 1, n - 1) })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] += k * row[src]`.
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(dst, j) + k * self.get(src, j);
            self.set(dst, j, v);
        }
    }

    /// `col[dst] += k * col[src]`.
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, dst) + k * self.get(i, src);
            self.set(i, dst, v);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self.get(r, j);
            self.set(r, j, v);
        }
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        f.write_str("]")
    }
}

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal, `d_1 | d_2 | ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub d: IntegerMatrix,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithForm {
    /// The nonzero diagonal entries.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.get(i, i).clone())
            .filter(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = IntegerMatrix::identity(rows);
    let mut v = IntegerMatrix::identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !a.get(i, j).is_zero())
                .min_by(|&(i, j), &(k, l)| a.get(i, j).abs().cmp(&a.get(k, l).abs()));
            let Some((pi, pj)) = pivot else {
                return SmithForm { d: a, u, v };
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut dirty = false;
            for i in t + 1..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let k = -a.get(i, t).div_floor(a.get(t, t));
                a.add_row(i, t, &k);
                u.add_row(i, t, &k);
                dirty |= !a.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let k = -a.get(t, j).div_floor(a.get(t, t));
                a.add_col(j, t, &k);
                v.add_col(j, t, &k);
                dirty |= !a.get(t, j).is_zero();
            }
            if dirty {
                continue;
            }
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a.get(i, j).is_multiple_of(a.get(t, t)));
            if let Some((i, _)) = offender {
                a.add_row(t, i, &BigInt::one());
                u.add_row(t, i, &BigInt::one());
                continue;
            }
            if a.get(t, t).is_negative() {
                a.negate_row(t);
                u.negate_row(t);
            }
            break;
        }
    }
    SmithForm { d: a, u, v }
}

fn serialize_factors<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

/// `Z^free_rank ⊕ Z/t_1 ⊕ ...` with `t_1 | t_2 | ...`, all `t_i > 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    #[serde(serialize_with = "serialize_factors")]
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        // merging invariant factors needs a re-normalization through SNF
        let mut diag = self.torsion.clone();
        diag.extend(other.torsion.iter().cloned());
        let n = diag.len();
        let mut m = IntegerMatrix::zeros(n, n);
        for (i, d) in diag.into_iter().enumerate() {
            m.set(i, i, d);
        }
        let torsion = smith_normal_form(&m)
            .invariant_factors()
            .into_iter()
            .filter(|d| !d.is_one())
            .collect();
        AbelianGroup {
            free_rank: self.free_rank + other.free_rank,
            torsion,
        }
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Cokernel of `m : Z^cols -> Z^rows`.
pub fn cokernel(m: &IntegerMatrix) -> AbelianGroup {
    let snf = smith_normal_form(m);
    let factors = snf.invariant_factors();
    AbelianGroup {
        free_rank: m.rows - factors.len(),
        torsion: factors.into_iter().filter(|d| !d.is_one()).collect(),
    }
}

/// Intersection form on the basis `(a_1, b_1, ..., a_g, b_g)` with `a_i · b_i = 1`.
pub fn symplectic_form(g: usize) -> IntegerMatrix {
    let mut j = IntegerMatrix::zeros(2 * g, 2 * g);
    for i in 0..g {
        j.set(2 * i, 2 * i + 1, BigInt::one());
        j.set(2 * i + 1, 2 * i, -BigInt::one());
    }
    j
}

/// Action `x ↦ x + (c · x) c` of the Dehn twist along the class `c`.
pub fn transvection(g: usize, c: &[i64]) -> Result<IntegerMatrix> {
    if c.len() != 2 * g {
        return Err(Error::Domain(format!(
            "curve class has {} coordinates, expected {}",
            c.len(),
            2 * g
        )));
    }
    let j = symplectic_form(g);
    let mut m = IntegerMatrix::identity(2 * g);
    for col in 0..2 * g {
        let pairing: BigInt = (0..2 * g).map(|k| BigInt::from(c[k]) * j.get(k, col)).sum();
        for (row, &cr) in c.iter().enumerate() {
            let v = m.get(row, col) + BigInt::from(cr) * &pairing;
            m.set(row, col, v);
        }
    }
    Ok(m)
}

/// Twist along the non-separating cycle `a_1`.
pub fn dehn_twist_action(g: usize) -> Result<IntegerMatrix> {
    if g == 0 {
        return Err(Error::Domain("genus must be at least 1".into()));
    }
    let mut a = vec![0; 2 * g];
    a[0] = 1;
    transvection(g, &a)
}

/// `H_1` of the mapping torus of a monodromy: `Z ⊕ coker(1 - φ_*)`.
pub fn h1_of_monodromy(phi: &IntegerMatrix) -> Result<AbelianGroup> {
    if phi.rows != phi.cols {
        return Err(Error::Domain("monodromy must be square".into()));
    }
    let one_minus = IntegerMatrix::identity(phi.rows).sub(phi)?;
    Ok(AbelianGroup::free(1).direct_sum(&cokernel(&one_minus)))
}

pub fn h1_mapping_torus(g: usize) -> Result<AbelianGroup> {
    h1_of_monodromy(&dehn_twist_action(g)?)
}

/// Homology of the Lefschetz fibration over the disk, as known constants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LefschetzConstants {
    pub fiber_genus: usize,
    /// `H_2(X)`, generated by the fiber class.
    pub h2: AbelianGroup,
    pub h2_relative: AbelianGroup,
    pub h1: AbelianGroup,
}

pub fn lefschetz_constants(g: usize) -> Result<LefschetzConstants> {
    if g == 0 {
        return Err(Error::Domain("genus must be at least 1".into()));
    }
    Ok(LefschetzConstants {
        fiber_genus: g,
        h2: AbelianGroup::free(1),
        h2_relative: AbelianGroup::free(1),
        h1: AbelianGroup::free(2 * g - 1),
    })
}
