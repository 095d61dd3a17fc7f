//! Desk-scale Grassmann homology over prime fields: enumerate canonical
//! orbit points degree by degree, assemble integer boundary matrices from
//! the coinvariant-mode boundary, and read off ranks and torsion through
//! Smith normal form.

use crate::chain::{Chain, ChainError};
use crate::config::{ConfigError, Configuration};
use crate::field::{FieldDescriptor, Scalar, Vector};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::collections::BTreeMap;

const BASIS_LIMIT: usize = 20_000;

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
pub enum HomologyError {
    #[error("homology enumeration needs a prime field, got {0}")]
    NotPrimeField(FieldDescriptor),
    #[error("homology enumeration supports m ≤ 2, got m={0}")]
    UnsupportedM(usize),
    #[error("max degree {n_max} exceeds the enumeration bound {limit} for this m")]
    DegreeTooLarge { n_max: usize, limit: usize },
    #[error("degree {degree} basis exceeds {limit} orbit points")]
    TooLarge { degree: usize, limit: usize },
    #[error("boundary matrices fail ∂² = 0 between degrees {degree} and {}", .degree - 1)]
    BrokenComplex { degree: usize },
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Config(#[from] ConfigError),
}

/// The coinvariant chain complex of general-position tuples over a prime
/// field, assembled degree by degree with integer boundary matrices.
pub struct OrbitComplex {
    desc: FieldDescriptor,
    m: usize,
    max_degree: usize,
    bases: Vec<Vec<Configuration>>,
    /// matrices[d] is D_d : C_d → C_{d−1} for d ≥ 1; matrices[0] is empty.
    matrices: Vec<Vec<Vec<BigInt>>>,
}

impl OrbitComplex {
    pub fn build(desc: FieldDescriptor, m: usize, max_degree: usize) -> Result<Self, HomologyError> {
        let FieldDescriptor::Prime { p } = desc else {
            return Err(HomologyError::NotPrimeField(desc));
        };
        if m == 0 || m > 2 {
            return Err(HomologyError::UnsupportedM(m));
        }
        let mut bases = Vec::with_capacity(max_degree + 1);
        for degree in 0..=max_degree {
            bases.push(enumerate_orbits(desc, p, m, degree + 1)?);
        }
        let mut matrices = vec![Vec::new()];
        for degree in 1..=max_degree {
            matrices.push(boundary_matrix(m, &bases[degree - 1], &bases[degree])?);
        }
        Ok(OrbitComplex { desc, m, max_degree, bases, matrices })
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        self.desc
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn basis(&self, degree: usize) -> &[Configuration] {
        &self.bases[degree]
    }

    /// D_degree as rows over the degree−1 basis; degree ≥ 1.
    pub fn boundary_matrix(&self, degree: usize) -> &[Vec<BigInt>] {
        &self.matrices[degree]
    }

    /// Verifies D_{d−1}·D_d = 0 for every consecutive pair.
    pub fn certify(&self) -> Result<(), HomologyError> {
        for degree in 2..=self.max_degree {
            let a = &self.matrices[degree - 1];
            let b = &self.matrices[degree];
            let rows = self.bases[degree - 2].len();
            let mid = self.bases[degree - 1].len();
            let cols = self.bases[degree].len();
            for i in 0..rows {
                for j in 0..cols {
                    let mut acc = BigInt::zero();
                    for k in 0..mid {
                        acc += &a[i][k] * &b[k][j];
                    }
                    if !acc.is_zero() {
                        return Err(HomologyError::BrokenComplex { degree });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Canonical orbit representatives of general-position tuples of the given
/// length: the first min(m, length) vectors are the standard basis, the
/// rest are enumerated lexicographically with pruning.
fn enumerate_orbits(
    desc: FieldDescriptor,
    p: u64,
    m: usize,
    length: usize,
) -> Result<Vec<Configuration>, HomologyError> {
    if length <= m {
        let vectors = (0..length).map(|i| Vector::standard_basis(desc, m, i)).collect();
        return Ok(vec![Configuration::new_unchecked(m, vectors)]);
    }
    let frame: Vec<Vector> = (0..m).map(|i| Vector::standard_basis(desc, m, i)).collect();
    let mut out = Vec::new();
    let mut stack = frame.clone();
    extend_orbits(desc, p, m, length, &mut stack, &mut out)?;
    Ok(out)
}

fn extend_orbits(
    desc: FieldDescriptor,
    p: u64,
    m: usize,
    length: usize,
    stack: &mut Vec<Vector>,
    out: &mut Vec<Configuration>,
) -> Result<(), HomologyError> {
    if stack.len() == length {
        out.push(Configuration::new_unchecked(m, stack.clone()));
        if out.len() > BASIS_LIMIT {
            return Err(HomologyError::TooLarge { degree: length - 1, limit: BASIS_LIMIT });
        }
        return Ok(());
    }
    let mut coords = vec![0u64; m];
    loop {
        let v = Vector(coords.iter().map(|&r| Scalar::Prime { r, p }).collect());
        stack.push(v);
        if crate::config::is_general_position(m, stack)? {
            extend_orbits(desc, p, m, length, stack, out)?;
        }
        stack.pop();
        let mut i = m;
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            coords[i] += 1;
            if coords[i] < p {
                break;
            }
            coords[i] = 0;
        }
    }
}

fn boundary_matrix(
    m: usize,
    target_basis: &[Configuration],
    source_basis: &[Configuration],
) -> Result<Vec<Vec<BigInt>>, HomologyError> {
    let index: BTreeMap<&Configuration, usize> =
        target_basis.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut matrix = vec![vec![BigInt::zero(); source_basis.len()]; target_basis.len()];
    for (col, config) in source_basis.iter().enumerate() {
        let image = Chain::single_orbit(config)?.boundary()?;
        for (face, coeff) in image.terms() {
            let row = *index
                .get(face)
                .unwrap_or_else(|| panic!("face orbit missing from basis (m={m})"));
            matrix[row][col] = coeff.to_integer();
        }
    }
    Ok(matrix)
}

/// Diagonal of the Smith normal form: nonnegative invariant factors, each
/// dividing the next. The input matrix is consumed.
pub fn smith_diagonal(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut diag = Vec::new();
    let mut t = 0usize;
    while t < rows.min(cols) {
        // Move the smallest nonzero entry of the trailing submatrix to (t,t).
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j].is_zero() {
                    continue;
                }
                pivot = match pivot {
                    Some((pi, pj)) if a[pi][pj].abs() <= a[i][j].abs() => Some((pi, pj)),
                    _ => Some((i, j)),
                };
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        // Reduce column and row by the pivot; remainders force a re-pick of
        // a strictly smaller pivot, so this terminates.
        let mut dirty = false;
        for i in (t + 1)..rows {
            if a[i][t].is_zero() {
                continue;
            }
            let q = &a[i][t] / &a[t][t];
            if !q.is_zero() {
                for j in t..cols {
                    let s = &q * &a[t][j];
                    a[i][j] -= s;
                }
            }
            dirty |= !a[i][t].is_zero();
        }
        for j in (t + 1)..cols {
            if a[t][j].is_zero() {
                continue;
            }
            let q = &a[t][j] / &a[t][t];
            if !q.is_zero() {
                for i in t..rows {
                    let s = &q * &a[i][t];
                    a[i][j] -= s;
                }
            }
            dirty |= !a[t][j].is_zero();
        }
        if dirty {
            continue;
        }
        // Pivot must divide the rest of the matrix for the divisibility
        // chain; fold an offending row into row t and re-run.
        let mut divides_all = true;
        'scan: for i in (t + 1)..rows {
            for j in (t + 1)..cols {
                if !(&a[i][j] % &a[t][t]).is_zero() {
                    for jj in t..cols {
                        let add = a[i][jj].clone();
                        a[t][jj] += add;
                    }
                    divides_all = false;
                    break 'scan;
                }
            }
        }
        if !divides_all {
            continue;
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub n: usize,
    pub rank: usize,
    pub torsion: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
    pub degrees: Vec<DegreeReport>,
    pub field: String,
    pub m: usize,
}

/// Homology of the coinvariant complex in degrees 0..=n_max, with ∂² = 0
/// certified on the assembled matrices before anything is reported.
pub fn grassmann_homology(
    desc: FieldDescriptor,
    m: usize,
    n_max: usize,
) -> Result<HomologyReport, HomologyError> {
    if m == 0 || m > 2 {
        return Err(HomologyError::UnsupportedM(m));
    }
    if n_max > m + 2 {
        return Err(HomologyError::DegreeTooLarge { n_max, limit: m + 2 });
    }
    let complex = OrbitComplex::build(desc, m, n_max + 1)?;
    complex.certify()?;
    let diagonals: Vec<Vec<BigInt>> = (0..=n_max + 1)
        .map(|d| {
            if d == 0 {
                Vec::new()
            } else {
                smith_diagonal(complex.boundary_matrix(d).to_vec())
            }
        })
        .collect();
    let mut degrees = Vec::with_capacity(n_max + 1);
    for d in 0..=n_max {
        let dim = complex.basis(d).len();
        let rank_out = diagonals[d].len();
        let rank_in = diagonals[d + 1].len();
        let rank = dim - rank_out - rank_in;
        let torsion = diagonals[d + 1]
            .iter()
            .filter(|f| **f > BigInt::from(1))
            .map(|f| f.to_u64().expect("invariant factor fits in u64 at desk scale"))
            .collect();
        degrees.push(DegreeReport { n: d, rank, torsion });
    }
    Ok(HomologyReport { degrees, field: desc.to_string(), m })
}

/// Rank of the boundary D_m : C_m → C_{m−1} in the coinvariant complex,
/// which measures the cokernel of the top Grassmann homology inside the
/// Suslin group S_m: rank 1 for even m, rank 0 for odd m.
pub fn suslin_cokernel_rank(desc: FieldDescriptor, m: usize) -> Result<usize, HomologyError> {
    if m == 0 || m > 2 {
        return Err(HomologyError::UnsupportedM(m));
    }
    let complex = OrbitComplex::build(desc, m, m)?;
    complex.certify()?;
    Ok(smith_diagonal(complex.boundary_matrix(m).to_vec()).len())
}
