//! Non-left-orderability certificates for presentations, read off their
//! ε-matrix.
//!
//! Two checkers are provided. [`check_notlo_bruteforce`] tries every row
//! scaling `d ∈ {0,+,-}^m \ {0}` and asks for a nonzero column whose nonzero
//! entries share one definite sign. [`check_lemma_matrix`] instead inspects
//! the formal determinant: one nonzero summand, no `*` in any nonzero summand
//! and a single summand sign together imply the scaling condition. The
//! cycle construction behind that implication is exposed as
//! [`find_cycle_witness`] and [`verify_cycle_contradiction`].
//!
//! Both checkers are one-directional. A negative outcome is reported as
//! "criterion inapplicable", never as "left-orderable".

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permutation::Permutation;
use crate::signs::{classify_formal_det, sign_product, Sign, SignMatrix};

/// Default cap on the number of rows for the `3^m` scaling enumeration.
pub const DEFAULT_MAX_BRUTEFORCE_ROWS: usize = 16;

/// Per-row multipliers drawn from `{0, +, -}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Sign>", into = "Vec<Sign>")]
pub struct RowScaling(Vec<Sign>);

impl RowScaling {
    pub fn new(d: Vec<Sign>) -> Result<Self> {
        if d.contains(&Sign::Star) {
            return Err(Error::Precondition("row scaling may not contain *".into()));
        }
        Ok(RowScaling(d))
    }

    pub fn all_plus(m: usize) -> Self {
        RowScaling(vec![Sign::Plus; m])
    }

    pub fn as_slice(&self) -> &[Sign] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|s| s.is_zero())
    }
}

impl TryFrom<Vec<Sign>> for RowScaling {
    type Error = Error;

    fn try_from(d: Vec<Sign>) -> Result<Self> {
        RowScaling::new(d)
    }
}

impl From<RowScaling> for Vec<Sign> {
    fn from(d: RowScaling) -> Self {
        d.0
    }
}

impl fmt::Display for RowScaling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, s) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

/// Multiplies row `i` of `e` by `d[i]`.
pub fn scale_rows(e: &SignMatrix, d: &RowScaling) -> Result<SignMatrix> {
    if d.0.len() != e.rows() {
        return Err(Error::Dimension(format!(
            "scaling of length {} for a matrix with {} rows",
            d.0.len(),
            e.rows()
        )));
    }
    let mut out = e.clone();
    for i in 0..e.rows() {
        for j in 0..e.cols() {
            out.set(i, j, d.0[i] * e.get(i, j));
        }
    }
    Ok(out)
}

/// How a single column looks to the scaling criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ColumnStatus {
    Zero,
    AllPlus,
    AllMinus,
    Mixed,
    HasStar,
}

impl ColumnStatus {
    pub fn qualifies(self) -> bool {
        matches!(self, ColumnStatus::AllPlus | ColumnStatus::AllMinus)
    }
}

pub fn column_status<I: IntoIterator<Item = Sign>>(column: I) -> ColumnStatus {
    let (mut plus, mut minus) = (false, false);
    for s in column {
        match s {
            Sign::Zero => {}
            Sign::Plus => plus = true,
            Sign::Minus => minus = true,
            Sign::Star => return ColumnStatus::HasStar,
        }
    }
    match (plus, minus) {
        (false, false) => ColumnStatus::Zero,
        (true, false) => ColumnStatus::AllPlus,
        (false, true) => ColumnStatus::AllMinus,
        (true, true) => ColumnStatus::Mixed,
    }
}

pub fn column_report(m: &SignMatrix) -> Vec<ColumnStatus> {
    (0..m.cols()).map(|j| column_status(m.column(j))).collect()
}

/// Least (0-based) column that is nonzero with all nonzero entries `+`, or
/// all `-`.
pub fn notlo_column_condition(m: &SignMatrix) -> Option<usize> {
    (0..m.cols()).find(|&j| column_status(m.column(j)).qualifies())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BruteforceOutcome {
    /// Every nonzero scaling leaves a qualifying column.
    pub holds: bool,
    /// Lexicographically least failing scaling (order `0 < + < -`).
    pub witness: Option<RowScaling>,
    pub scalings_checked: u64,
}

/// Exhaustive scaling test over all `3^m - 1` nonzero row scalings.
///
/// `holds = true` certifies the presented group is not left-orderable;
/// `holds = false` says nothing about orderability.
pub fn check_notlo_bruteforce(e: &SignMatrix, max_rows: usize) -> Result<BruteforceOutcome> {
    let m = e.rows();
    if m == 0 {
        return Err(Error::Precondition(
            "scaling test needs at least one row".into(),
        ));
    }
    if m > max_rows || m > 32 {
        return Err(Error::ResourceLimit {
            what: "scaling test rows",
            limit: max_rows.min(32),
        });
    }

    // Row bitmasks per column; bit i is row i.
    let masks: Vec<(u32, u32, u32)> = (0..e.cols())
        .map(|j| {
            let (mut p, mut n, mut s) = (0u32, 0u32, 0u32);
            for (i, v) in e.column(j).enumerate() {
                match v {
                    Sign::Plus => p |= 1 << i,
                    Sign::Minus => n |= 1 << i,
                    Sign::Star => s |= 1 << i,
                    Sign::Zero => {}
                }
            }
            (p, n, s)
        })
        .collect();
    let qualifies = |dp: u32, dn: u32| {
        masks.iter().any(|&(p, n, s)| {
            if s & (dp | dn) != 0 {
                return false;
            }
            let positive = (p & dp) | (n & dn);
            let negative = (p & dn) | (n & dp);
            (positive != 0) != (negative != 0)
        })
    };

    // Base-3 counter with d[0] most significant gives lexicographic order.
    let mut digits = vec![0u8; m];
    let mut checked = 0u64;
    loop {
        let mut k = m;
        loop {
            if k == 0 {
                return Ok(BruteforceOutcome {
                    holds: true,
                    witness: None,
                    scalings_checked: checked,
                });
            }
            k -= 1;
            if digits[k] < 2 {
                digits[k] += 1;
                break;
            }
            digits[k] = 0;
        }
        let (mut dp, mut dn) = (0u32, 0u32);
        for (i, &dg) in digits.iter().enumerate() {
            match dg {
                1 => dp |= 1 << i,
                2 => dn |= 1 << i,
                _ => {}
            }
        }
        checked += 1;
        if !qualifies(dp, dn) {
            let d = digits
                .iter()
                .map(|&dg| [Sign::Zero, Sign::Plus, Sign::Minus][dg as usize])
                .collect();
            return Ok(BruteforceOutcome {
                holds: false,
                witness: Some(RowScaling(d)),
                scalings_checked: checked,
            });
        }
    }
}

/// The first hypothesis of the determinant criterion that failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum FailedCondition {
    /// (1): no permutation has all entries nonzero.
    NoNonzeroSummand,
    /// (2): a nonzero summand contains `*`.
    StarInSummand { witness: Permutation },
    /// (3): nonzero summands of both signs.
    MixedSigns {
        plus_witness: Permutation,
        minus_witness: Permutation,
    },
}

impl FailedCondition {
    pub fn number(&self) -> u8 {
        match self {
            FailedCondition::NoNonzeroSummand => 1,
            FailedCondition::StarInSummand { .. } => 2,
            FailedCondition::MixedSigns { .. } => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum OrderabilityVerdict {
    NotLeftOrderable {
        witness_sigma0: Permutation,
        summand_sign: Sign,
    },
    CriterionInapplicable {
        failed: FailedCondition,
    },
}

impl OrderabilityVerdict {
    pub fn is_not_left_orderable(&self) -> bool {
        matches!(self, OrderabilityVerdict::NotLeftOrderable { .. })
    }
}

/// Determinant criterion on a square ε-matrix.
pub fn check_lemma_matrix(e: &SignMatrix, max_n: usize) -> Result<OrderabilityVerdict> {
    let c = classify_formal_det(e, max_n)?;
    let failed = if !c.has_nonzero_summand {
        FailedCondition::NoNonzeroSummand
    } else if let Some(witness) = c.star_witness {
        FailedCondition::StarInSummand { witness }
    } else if let Some((plus_witness, minus_witness)) = c.conflict_witness {
        FailedCondition::MixedSigns {
            plus_witness,
            minus_witness,
        }
    } else {
        let summand_sign = c
            .uniform_sign()
            .expect("star-free nonzero summand has a definite sign");
        return Ok(OrderabilityVerdict::NotLeftOrderable {
            witness_sigma0: c.witness_sigma0.expect("nonzero summand"),
            summand_sign,
        });
    };
    Ok(OrderabilityVerdict::CriterionInapplicable { failed })
}

/// Searches for the "connect the dots" loop in a square matrix whose
/// diagonal is definite.
///
/// Starting from row 0, each step leaves the current index `i` down column
/// `i` to the least row `r != i` with `m[r][i]` nonzero and different from
/// `m[i][i]`, then continues from the diagonal entry of row `r`. The first
/// repeated index closes the loop. Returns `None` when some column has no
/// such entry. Indices are 0-based.
pub fn find_cycle_witness(m: &SignMatrix) -> Result<Option<Vec<usize>>> {
    if !m.is_square() {
        return Err(Error::Dimension("cycle witness needs a square matrix".into()));
    }
    let n = m.rows();
    if let Some(i) = (0..n).find(|&i| !m.get(i, i).is_definite()) {
        return Err(Error::Precondition(format!(
            "diagonal entry {} is {}, expected + or -",
            i + 1,
            m.get(i, i)
        )));
    }
    let next: Vec<Option<usize>> = (0..n)
        .map(|j| {
            let diag = m.get(j, j);
            (0..n).find(|&r| r != j && !m.get(r, j).is_zero() && m.get(r, j) != diag)
        })
        .collect();
    if n == 0 || next.iter().any(Option::is_none) {
        return Ok(None);
    }

    let mut position = vec![usize::MAX; n];
    let mut path = Vec::new();
    let mut i = 0;
    while position[i] == usize::MAX {
        position[i] = path.len();
        path.push(i);
        i = next[i].expect("checked above");
    }
    Ok(Some(path.split_off(position[i])))
}

/// Positions `(τ(i), i)` read by the cycle permutation `τ: i_j -> i_{j+1}`,
/// one per cycle index, 0-based.
pub fn cycle_positions(cycle: &[usize]) -> Vec<(usize, usize)> {
    (0..cycle.len())
        .map(|j| (cycle[(j + 1) % cycle.len()], cycle[j]))
        .collect()
}

/// Checks that the summand of the cycle permutation has the opposite sign to
/// the diagonal summand. Entries are read at `(τ(i), i)`.
pub fn verify_cycle_contradiction(m: &SignMatrix, cycle: &[usize]) -> Result<bool> {
    if !m.is_square() {
        return Err(Error::Dimension("cycle check needs a square matrix".into()));
    }
    let n = m.rows();
    if cycle.len() < 2 {
        return Err(Error::Precondition(format!(
            "cycle of length {} is malformed",
            cycle.len()
        )));
    }
    let tau = Permutation::from_cycle(n, cycle)?;
    let diagonal = sign_product((0..n).map(|i| m.get(i, i)));
    let cycled = tau.sign() * sign_product((0..n).map(|i| m.get(tau.apply(i), i)));
    Ok(diagonal.is_definite() && cycled == -diagonal)
}
