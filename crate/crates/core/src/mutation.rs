//! Euler matrix of the collection `O, O(-1), ..., O(-(k-1))` and braid-group mutations.
//!
//! A mutation at slot `i` changes the basis on positions `(i-1, i)` by a matrix `P` and
//! acts on bilinear-form matrices by `m -> P m P^T`.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::combinat::binomial;
use crate::error::{Error, Result};
use crate::exact::{Matrix, Scalar};
use crate::levelt::check_rank;
use crate::stokes::StokesResult;

/// `chi_ij = C(k + i - j - 1, i - j)` for `i >= j`, zero above the diagonal.
pub fn chi_matrix(k: usize) -> Result<Matrix> {
    check_rank(k)?;
    Ok(Matrix::from_fn(k, k, |i, j| {
        if i >= j {
            Scalar::from_integer(binomial((k + i - j - 1) as u64, (i - j) as u64))
        } else {
            Scalar::zero()
        }
    }))
}

/// Anti-diagonal permutation `J_ij = delta_{i, k-1-j}`.
pub fn reversal(k: usize) -> Matrix {
    Matrix::from_fn(k, k, |i, j| {
        if i + j == k - 1 {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Left,
    Right,
}

/// Sign convention of the mutated object `E'_{i-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SignRule {
    /// `(E_{i-1}, E_i) -> (E_i - c E_{i-1}, E_{i-1})`.
    Standard,
    /// `(E_{i-1}, E_i) -> (c E_{i-1} - E_i, E_{i-1})`.
    Reversed,
}

impl Direction {
    pub fn name(self) -> &'static str {
        match self {
            Direction::Left => "left",
            Direction::Right => "right",
        }
    }
}

impl SignRule {
    pub fn name(self) -> &'static str {
        match self {
            SignRule::Standard => "standard",
            SignRule::Reversed => "reversed",
        }
    }
}

/// The convention under which `S^T = J beta chi beta J` is checked and reported.
pub const FROZEN_CONVENTION: (SignRule, Direction) = (SignRule::Standard, Direction::Left);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    /// Slot `1..=k-1`.
    pub index: usize,
    pub inverse: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BraidWord {
    pub letters: Vec<Letter>,
}

impl BraidWord {
    /// `b_1 (b_2 b_1) ... (b_{k-1} ... b_2 b_1)`.
    pub fn garside(k: usize) -> Self {
        let letters = (1..k)
            .flat_map(|j| (1..=j).rev())
            .map(|index| Letter {
                index,
                inverse: false,
            })
            .collect();
        BraidWord { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Applies the letters in order; inverse letters use the opposite direction.
    pub fn act(&self, m: &Matrix, rule: SignRule, dir: Direction) -> Result<Matrix> {
        let flip = |d| match d {
            Direction::Left => Direction::Right,
            Direction::Right => Direction::Left,
        };
        self.letters.iter().try_fold(m.clone(), |acc, l| {
            mutate_with(&acc, l.index, if l.inverse { flip(dir) } else { dir }, rule)
        })
    }
}

/// Unit diagonal and lower triangular after some simultaneous row/column permutation.
pub fn is_unitriangular_up_to_permutation(m: &Matrix) -> bool {
    let n = m.rows();
    if !m.is_square() || (0..n).any(|i| !m.get(i, i).is_one()) {
        return false;
    }
    // acyclic "a depends on b" relation <=> triangular after reordering
    let mut remaining: Vec<usize> = (0..n).collect();
    while !remaining.is_empty() {
        let Some(pos) = remaining
            .iter()
            .position(|&a| remaining.iter().all(|&b| a == b || m.get(a, b).is_zero()))
        else {
            return false;
        };
        remaining.remove(pos);
    }
    true
}

fn block(c: &Scalar, dir: Direction, rule: SignRule) -> [[Scalar; 2]; 2] {
    let (one, zero) = (Scalar::one(), Scalar::zero());
    match (rule, dir) {
        (SignRule::Standard, Direction::Left) => [[-c.clone(), one.clone()], [one, zero]],
        (SignRule::Standard, Direction::Right) => [[zero, one.clone()], [one, -c.clone()]],
        (SignRule::Reversed, Direction::Left) => [[c.clone(), -one.clone()], [one, zero]],
        (SignRule::Reversed, Direction::Right) => [[zero, one.clone()], [-one, c.clone()]],
    }
}

/// Mutation at slot `i` (`1..=k-1`) with the standard sign rule.
pub fn mutate(m: &Matrix, i: usize, dir: Direction) -> Result<Matrix> {
    mutate_with(m, i, dir, SignRule::Standard)
}

/// `P m P^T`, where `P` is the identity outside rows and columns `(i-1, i)`.
///
/// The pairing `c` is `m[i][i-1]`, or `m[i-1][i]` when the former vanishes.
pub fn mutate_with(m: &Matrix, i: usize, dir: Direction, rule: SignRule) -> Result<Matrix> {
    let k = m.rows();
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if i == 0 || i >= k {
        return Err(Error::IndexOutOfRange {
            index: i,
            max: k.saturating_sub(1),
        });
    }
    if !is_unitriangular_up_to_permutation(m) {
        return Err(Error::NotUnitTriangular);
    }
    let c = if m.get(i, i - 1).is_zero() {
        m.get(i - 1, i)
    } else {
        m.get(i, i - 1)
    };
    let b = block(c, dir, rule);
    let mut p = Matrix::identity(k);
    for (r, row) in b.iter().enumerate() {
        for (s, v) in row.iter().enumerate() {
            p.set(i - 1 + r, i - 1 + s, v.clone());
        }
    }
    Ok(&(&p * m) * &p.transpose())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiStokesReport {
    pub k: usize,
    pub chi: Matrix,
    /// `chi S = id`.
    pub chi_s_identity: bool,
    /// `S chi = id`.
    pub s_chi_identity: bool,
    /// `J (beta . chi) J` under the frozen convention.
    pub braided: Matrix,
    /// Outcome of `S^T = J (beta . chi) J` for every convention.
    pub conventions: Vec<(SignRule, Direction, bool)>,
    pub frozen_holds: bool,
}

impl ChiStokesReport {
    pub fn surviving(&self) -> Vec<(SignRule, Direction)> {
        self.conventions
            .iter()
            .filter(|c| c.2)
            .map(|c| (c.0, c.1))
            .collect()
    }
}

pub fn verify_chi_stokes(k: usize, s: &StokesResult) -> Result<ChiStokesReport> {
    let chi = chi_matrix(k)?;
    if s.k != k {
        return Err(Error::DimensionMismatch {
            op: "chi/Stokes comparison",
            left_rows: k,
            left_cols: k,
            right_rows: s.k,
            right_cols: s.k,
        });
    }
    let id = Matrix::identity(k);
    let j = reversal(k);
    let st = s.s.transpose();
    let word = BraidWord::garside(k);
    let mut conventions = Vec::with_capacity(4);
    let mut braided = None;
    for rule in [SignRule::Standard, SignRule::Reversed] {
        for dir in [Direction::Left, Direction::Right] {
            let m = &(&j * &word.act(&chi, rule, dir)?) * &j;
            conventions.push((rule, dir, m == st));
            if (rule, dir) == FROZEN_CONVENTION {
                braided = Some(m);
            }
        }
    }
    let frozen_holds = conventions
        .iter()
        .any(|&(r, d, ok)| (r, d) == FROZEN_CONVENTION && ok);
    Ok(ChiStokesReport {
        k,
        chi_s_identity: &chi * &s.s == id,
        s_chi_identity: &s.s * &chi == id,
        chi,
        braided: braided.ok_or(Error::Inconsistent("frozen convention not evaluated"))?,
        conventions,
        frozen_holds,
    })
}
