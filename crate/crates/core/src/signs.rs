//! The four-element sign semiring `{0, +, -, *}` and matrices over it.
//!
//! `*` stands for a quantity of unknown sign. Only multiplication is defined;
//! the formal determinant of a sign matrix is *classified* (which signed
//! summands occur) rather than summed.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{ControlFlow, Mul, Neg};
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permutation::Permutation;

/// An element of the sign semiring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
    #[serde(rename = "*")]
    Star,
}

impl Sign {
    pub const ALL: [Sign; 4] = [Sign::Zero, Sign::Plus, Sign::Minus, Sign::Star];

    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }

    /// `Plus` or `Minus`.
    pub fn is_definite(self) -> bool {
        matches!(self, Sign::Plus | Sign::Minus)
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Zero => '0',
            Sign::Plus => '+',
            Sign::Minus => '-',
            Sign::Star => '*',
        }
    }

    pub fn from_symbol(c: char) -> Option<Sign> {
        match c {
            '0' => Some(Sign::Zero),
            '+' => Some(Sign::Plus),
            '-' => Some(Sign::Minus),
            '*' => Some(Sign::Star),
            _ => None,
        }
    }
}

/// Semiring multiplication.
pub fn sign_mul(a: Sign, b: Sign) -> Sign {
    use Sign::*;
    match (a, b) {
        (Zero, _) | (_, Zero) => Zero,
        (Star, _) | (_, Star) => Star,
        (Plus, Plus) | (Minus, Minus) => Plus,
        (Plus, Minus) | (Minus, Plus) => Minus,
    }
}

/// Product of a sequence; the empty product is `Plus`.
pub fn sign_product<I: IntoIterator<Item = Sign>>(seq: I) -> Sign {
    seq.into_iter().fold(Sign::Plus, sign_mul)
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        sign_mul(self, rhs)
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        sign_mul(Sign::Minus, self)
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// A strictly nonzero sign: exponents of letters, local intersection
/// numbers of points and gradings of generators all live here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Polarity {
    Positive,
    Negative,
}

impl Polarity {
    pub fn from_i64(v: i64) -> Option<Polarity> {
        match v {
            1 => Some(Polarity::Positive),
            -1 => Some(Polarity::Negative),
            _ => None,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Polarity::Positive => 1,
            Polarity::Negative => -1,
        }
    }

    pub fn to_sign(self) -> Sign {
        match self {
            Polarity::Positive => Sign::Plus,
            Polarity::Negative => Sign::Minus,
        }
    }

    pub fn from_sign(s: Sign) -> Option<Polarity> {
        match s {
            Sign::Plus => Some(Polarity::Positive),
            Sign::Minus => Some(Polarity::Negative),
            _ => None,
        }
    }
}

impl Mul for Polarity {
    type Output = Polarity;

    fn mul(self, rhs: Polarity) -> Polarity {
        if self == rhs {
            Polarity::Positive
        } else {
            Polarity::Negative
        }
    }
}

impl Neg for Polarity {
    type Output = Polarity;

    fn neg(self) -> Polarity {
        self * Polarity::Negative
    }
}

impl Serialize for Polarity {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i64(self.as_i64())
    }
}

impl<'de> Deserialize<'de> for Polarity {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = i64::deserialize(d)?;
        Polarity::from_i64(v)
            .ok_or_else(|| serde::de::Error::custom(format!("sign must be 1 or -1, got {v}")))
    }
}

/// Row-major rectangular matrix of signs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<Sign>>", into = "Vec<Vec<Sign>>")]
pub struct SignMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Sign>,
}

impl SignMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Sign>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} sign matrix",
                entries.len()
            )));
        }
        Ok(SignMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn filled(rows: usize, cols: usize, value: Sign) -> Self {
        SignMatrix {
            rows,
            cols,
            entries: vec![value; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Sign>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("rows of unequal length".into()));
        }
        Ok(SignMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Sign {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, s: Sign) {
        self.entries[i * self.cols + j] = s;
    }

    pub fn row(&self, i: usize) -> &[Sign] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = Sign> + '_ {
        (0..self.rows).map(move |i| self.get(i, j))
    }

    pub fn entries(&self) -> &[Sign] {
        &self.entries
    }

    pub fn to_rows(&self) -> Vec<Vec<Sign>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut out = SignMatrix::filled(self.cols, self.rows, Sign::Zero);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Reorders rows and columns: entry `(i, j)` of the result is entry
    /// `(row_perm(i), col_perm(j))` of `self`.
    pub fn permuted(&self, row_perm: &Permutation, col_perm: &Permutation) -> Self {
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(row_perm.apply(i), col_perm.apply(j)));
            }
        }
        out
    }

    /// Replaces every definite entry by `weight(i, j)` times its sign.
    /// Returns `None` if the matrix contains `Star`, which has no
    /// realization.
    pub fn realize<T, F>(&self, mut weight: F) -> Option<crate::IntMatrix<T>>
    where
        T: Clone + Zero + One + Neg<Output = T>,
        F: FnMut(usize, usize) -> T,
    {
        let mut data = Vec::with_capacity(self.entries.len());
        for i in 0..self.rows {
            for j in 0..self.cols {
                data.push(match self.get(i, j) {
                    Sign::Zero => T::zero(),
                    Sign::Plus => weight(i, j),
                    Sign::Minus => -weight(i, j),
                    Sign::Star => return None,
                });
            }
        }
        crate::IntMatrix::new(self.rows, self.cols, data).ok()
    }

    /// Renders the text format: one line per row, entries separated by one
    /// space, newline-terminated.
    pub fn to_text(&self) -> String {
        let mut s = self.to_string();
        s.push('\n');
        s
    }
}

impl fmt::Display for SignMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                writeln!(f)?;
            }
            for (j, s) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{s}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for SignMatrix {
    type Err = Error;

    /// Strict parser for the text format. A single trailing newline is
    /// accepted; blank lines, repeated spaces and trailing whitespace are not.
    fn from_str(text: &str) -> Result<Self> {
        let body = text.strip_suffix('\n').unwrap_or(text);
        if body.is_empty() {
            return Err(Error::parse(1, "empty sign matrix"));
        }
        let mut rows = Vec::new();
        for (k, line) in body.split('\n').enumerate() {
            let lineno = k + 1;
            if line.is_empty() {
                return Err(Error::parse(lineno, "blank line"));
            }
            let mut row = Vec::new();
            for tok in line.split(' ') {
                let mut chars = tok.chars();
                match (chars.next(), chars.next()) {
                    (Some(c), None) => match Sign::from_symbol(c) {
                        Some(s) => row.push(s),
                        None => {
                            return Err(Error::parse(lineno, format!("invalid sign {c:?}")))
                        }
                    },
                    (None, _) => {
                        return Err(Error::parse(
                            lineno,
                            "entries must be separated by exactly one space",
                        ))
                    }
                    _ => return Err(Error::parse(lineno, format!("invalid token {tok:?}"))),
                }
            }
            if let Some(first) = rows.first() {
                let first: &Vec<Sign> = first;
                if first.len() != row.len() {
                    return Err(Error::parse(
                        lineno,
                        format!("row has {} entries, expected {}", row.len(), first.len()),
                    ));
                }
            }
            rows.push(row);
        }
        SignMatrix::from_rows(rows)
    }
}

impl TryFrom<Vec<Vec<Sign>>> for SignMatrix {
    type Error = Error;

    fn try_from(rows: Vec<Vec<Sign>>) -> Result<Self> {
        SignMatrix::from_rows(rows)
    }
}

impl From<SignMatrix> for Vec<Vec<Sign>> {
    fn from(m: SignMatrix) -> Self {
        m.to_rows()
    }
}

/// Which signed summands `sign(σ)·∏ ε_{i,σ(i)}` occur in the formal
/// determinant of a square sign matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetClassification {
    /// Some permutation has all its entries nonzero.
    pub has_nonzero_summand: bool,
    /// Some such permutation passes through a `Star` entry.
    pub star_in_nonzero_summand: bool,
    /// Values of the `Star`-free nonzero summands.
    pub signs_seen: BTreeSet<Sign>,
    /// Lexicographically least permutation with all entries nonzero.
    pub witness_sigma0: Option<Permutation>,
    /// A nonzero permutation through the first (row-major) usable `Star`.
    pub star_witness: Option<Permutation>,
    /// Lexicographically least `Star`-free summands of value `Plus` and
    /// `Minus`, when both occur.
    pub conflict_witness: Option<(Permutation, Permutation)>,
}

impl DetClassification {
    /// The common sign of all nonzero summands, when there is exactly one.
    pub fn uniform_sign(&self) -> Option<Sign> {
        if self.signs_seen.len() == 1 {
            self.signs_seen.iter().next().copied()
        } else {
            None
        }
    }
}

/// Default cap on the order of matrices handled by [`classify_formal_det`].
pub const DEFAULT_MAX_PERM_N: usize = 12;

/// Classifies the formal determinant of a square sign matrix.
///
/// Permutations are enumerated row by row in lexicographic order, pruned on
/// `Zero` entries and on partial assignments that cannot be completed to a
/// full transversal. `Star` participation is decided per `Star` entry with a
/// completion test on its minor, so only `Star`-free summands are enumerated,
/// and that enumeration stops as soon as both signs have been seen.
pub fn classify_formal_det(m: &SignMatrix, max_n: usize) -> Result<DetClassification> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "formal determinant of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    if n > max_n {
        return Err(Error::ResourceLimit {
            what: "formal determinant order",
            limit: max_n,
        });
    }

    let nonzero = |i: usize, j: usize| !m.get(i, j).is_zero();
    let definite = |i: usize, j: usize| m.get(i, j).is_definite();

    let witness_sigma0 = first_transversal(n, &nonzero, None);
    let Some(witness_sigma0) = witness_sigma0 else {
        return Ok(DetClassification {
            has_nonzero_summand: false,
            star_in_nonzero_summand: false,
            signs_seen: BTreeSet::new(),
            witness_sigma0: None,
            star_witness: None,
            conflict_witness: None,
        });
    };

    let star_witness = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| m.get(i, j) == Sign::Star)
        .find_map(|fixed| first_transversal(n, &nonzero, Some(fixed)));

    let mut first_plus: Option<Permutation> = None;
    let mut first_minus: Option<Permutation> = None;
    for_each_transversal(n, &definite, None, &mut |images| {
        let value = sign_product((0..n).map(|i| m.get(i, images[i])));
        let sigma = Permutation::from_images(images.to_vec()).expect("transversal");
        let slot = match sigma.sign() * value {
            Sign::Plus => &mut first_plus,
            _ => &mut first_minus,
        };
        if slot.is_none() {
            *slot = Some(sigma);
        }
        if first_plus.is_some() && first_minus.is_some() {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });

    let mut signs_seen = BTreeSet::new();
    if first_plus.is_some() {
        signs_seen.insert(Sign::Plus);
    }
    if first_minus.is_some() {
        signs_seen.insert(Sign::Minus);
    }
    let conflict_witness = match (first_plus, first_minus) {
        (Some(p), Some(q)) => Some((p, q)),
        _ => None,
    };

    Ok(DetClassification {
        has_nonzero_summand: true,
        star_in_nonzero_summand: star_witness.is_some(),
        signs_seen,
        witness_sigma0: Some(witness_sigma0),
        star_witness,
        conflict_witness,
    })
}

fn first_transversal(
    n: usize,
    allowed: &dyn Fn(usize, usize) -> bool,
    fixed: Option<(usize, usize)>,
) -> Option<Permutation> {
    let mut found = None;
    for_each_transversal(n, allowed, fixed, &mut |images| {
        found = Some(Permutation::from_images(images.to_vec()).expect("transversal"));
        ControlFlow::Break(())
    });
    found
}

/// Visits, in lexicographic order, every permutation `σ` with
/// `allowed(i, σ(i))` for all rows (and `σ(r) = c` when `fixed = (r, c)`).
/// Returns `true` if the visitor stopped early.
pub(crate) fn for_each_transversal(
    n: usize,
    allowed: &dyn Fn(usize, usize) -> bool,
    fixed: Option<(usize, usize)>,
    visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
) -> bool {
    let admissible = |i: usize, j: usize| match fixed {
        Some((r, c)) if i == r => j == c,
        Some((_, c)) if j == c => false,
        _ => allowed(i, j),
    };
    let mut images = vec![usize::MAX; n];
    let mut used = vec![false; n];
    search(0, n, &admissible, &mut images, &mut used, visit).is_break()
}

fn search(
    row: usize,
    n: usize,
    admissible: &dyn Fn(usize, usize) -> bool,
    images: &mut Vec<usize>,
    used: &mut Vec<bool>,
    visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    if row == n {
        return visit(images);
    }
    for col in 0..n {
        if used[col] || !admissible(row, col) {
            continue;
        }
        used[col] = true;
        images[row] = col;
        if completable(row + 1, n, admissible, used) {
            search(row + 1, n, admissible, images, used, visit)?;
        }
        used[col] = false;
    }
    images[row] = usize::MAX;
    ControlFlow::Continue(())
}

/// Whether rows `from..n` can be matched into the unused columns
/// (augmenting-path bipartite matching).
fn completable(
    from: usize,
    n: usize,
    admissible: &dyn Fn(usize, usize) -> bool,
    used: &[bool],
) -> bool {
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for row in from..n {
        let mut visited = vec![false; n];
        if !augment(row, n, admissible, used, &mut owner, &mut visited) {
            return false;
        }
    }
    true
}

fn augment(
    row: usize,
    n: usize,
    admissible: &dyn Fn(usize, usize) -> bool,
    used: &[bool],
    owner: &mut Vec<Option<usize>>,
    visited: &mut Vec<bool>,
) -> bool {
    for col in 0..n {
        if used[col] || visited[col] || !admissible(row, col) {
            continue;
        }
        visited[col] = true;
        let free = match owner[col] {
            None => true,
            Some(other) => augment(other, n, admissible, used, owner, visited),
        };
        if free {
            owner[col] = Some(row);
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use Sign::*;

    fn mat(rows: &[&[Sign]]) -> SignMatrix {
        SignMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn multiplication_rules() {
        assert_eq!(sign_mul(Plus, Minus), Minus);
        assert_eq!(sign_mul(Minus, Plus), Minus);
        assert_eq!(sign_mul(Zero, Star), Zero);
        assert_eq!(sign_mul(Star, Minus), Star);
        assert_eq!(sign_mul(Minus, Minus), Plus);
        assert_eq!(sign_mul(Plus, Plus), Plus);
        assert_eq!(sign_mul(Star, Star), Star);
    }

    #[test]
    fn semiring_laws_exhaustive() {
        for a in Sign::ALL {
            assert_eq!(a * Zero, Zero);
            assert_eq!(a * Plus, a);
            for b in Sign::ALL {
                assert_eq!(a * b, b * a);
                for c in Sign::ALL {
                    assert_eq!((a * b) * c, a * (b * c));
                }
            }
        }
    }

    #[test]
    fn products() {
        assert_eq!(sign_product([]), Plus);
        assert_eq!(sign_product([Plus, Minus, Minus]), Plus);
        assert_eq!(sign_product([Plus, Star, Zero]), Zero);
    }

    #[test]
    fn text_format_round_trip() {
        let text = "+ 0 0 0 -\n0 + - * 0\n";
        let m: SignMatrix = text.parse().unwrap();
        assert_eq!(m.rows(), 2);
        assert_eq!(m.cols(), 5);
        assert_eq!(m.get(1, 3), Star);
        assert_eq!(m.to_text(), text);
    }

    #[test]
    fn text_format_is_strict() {
        for bad in ["", "+  -", "+ - ", "+ -\n+", "+ x", "+-", "+ -\n\n+ -", " +"] {
            assert!(bad.parse::<SignMatrix>().is_err(), "{bad:?}");
        }
        assert!("+ -\n+ +".parse::<SignMatrix>().is_ok());
    }

    #[test]
    fn classify_single_plus() {
        let c = classify_formal_det(&mat(&[&[Plus]]), 12).unwrap();
        assert!(c.has_nonzero_summand);
        assert!(!c.star_in_nonzero_summand);
        assert_eq!(c.signs_seen, BTreeSet::from([Plus]));
        assert_eq!(c.witness_sigma0, Some(Permutation::identity(1)));
    }

    #[test]
    fn classify_single_star() {
        let c = classify_formal_det(&mat(&[&[Star]]), 12).unwrap();
        assert!(c.has_nonzero_summand);
        assert!(c.star_in_nonzero_summand);
        assert!(c.signs_seen.is_empty());
        assert_eq!(c.star_witness, Some(Permutation::identity(1)));
    }

    #[test]
    fn classify_all_plus_2x2_conflicts() {
        let c = classify_formal_det(&mat(&[&[Plus, Plus], &[Plus, Plus]]), 12).unwrap();
        assert_eq!(c.signs_seen, BTreeSet::from([Plus, Minus]));
        let swap = Permutation::from_images(vec![1, 0]).unwrap();
        assert_eq!(c.conflict_witness, Some((Permutation::identity(2), swap)));
    }

    #[test]
    fn classify_zero_matrix() {
        let c = classify_formal_det(&SignMatrix::filled(3, 3, Zero), 12).unwrap();
        assert!(!c.has_nonzero_summand);
        assert!(c.signs_seen.is_empty());
        assert!(c.witness_sigma0.is_none());
    }

    #[test]
    fn classify_rejects_non_square_and_oversize() {
        assert!(matches!(
            classify_formal_det(&SignMatrix::filled(2, 3, Plus), 12),
            Err(Error::Dimension(_))
        ));
        let err = classify_formal_det(&SignMatrix::filled(13, 13, Plus), 12).unwrap_err();
        assert!(err.is_resource_limit());
    }

    #[test]
    fn classify_large_dense_is_fast() {
        // Dense all-Plus 12x12: conflict found after two summands.
        let c = classify_formal_det(&SignMatrix::filled(12, 12, Plus), 12).unwrap();
        assert_eq!(c.signs_seen.len(), 2);
    }

    #[test]
    fn star_only_reachable_through_zero_free_permutation() {
        // The Star at (0,1) cannot be completed: column 0 is only reachable
        // from row 0.
        let m = mat(&[&[Plus, Star], &[Zero, Plus]]);
        let c = classify_formal_det(&m, 12).unwrap();
        assert!(!c.star_in_nonzero_summand);
        assert_eq!(c.signs_seen, BTreeSet::from([Plus]));
    }

    // Brute-force oracle over all n! permutations, no pruning.
    fn oracle(m: &SignMatrix) -> (bool, bool, BTreeSet<Sign>) {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..n {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let n = m.rows();
        let (mut any, mut star, mut seen) = (false, false, BTreeSet::new());
        for p in perms(n) {
            let entries: Vec<Sign> = (0..n).map(|i| m.get(i, p[i])).collect();
            if entries.iter().any(|e| e.is_zero()) {
                continue;
            }
            any = true;
            if entries.contains(&Star) {
                star = true;
                continue;
            }
            let mut inv = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if p[i] > p[j] {
                        inv += 1;
                    }
                }
            }
            let parity = if inv % 2 == 0 { Plus } else { Minus };
            seen.insert(parity * sign_product(entries));
        }
        (any, star, seen)
    }

    fn arb_square(max_n: usize) -> impl Strategy<Value = SignMatrix> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(proptest::sample::select(Sign::ALL.to_vec()), n * n)
                .prop_map(move |e| SignMatrix::new(n, n, e).unwrap())
        })
    }

    proptest! {
        #[test]
        fn classification_matches_brute_force(m in arb_square(5)) {
            let c = classify_formal_det(&m, 12).unwrap();
            let (any, star, seen) = oracle(&m);
            prop_assert_eq!(c.has_nonzero_summand, any);
            prop_assert_eq!(c.star_in_nonzero_summand, star);
            prop_assert_eq!(&c.signs_seen, &seen);
            prop_assert_eq!(c.witness_sigma0.is_some(), c.has_nonzero_summand);
        }

        #[test]
        fn classification_is_transpose_symmetric(m in arb_square(5)) {
            let a = classify_formal_det(&m, 12).unwrap();
            let b = classify_formal_det(&m.transpose(), 12).unwrap();
            prop_assert_eq!(a.has_nonzero_summand, b.has_nonzero_summand);
            prop_assert_eq!(a.star_in_nonzero_summand, b.star_in_nonzero_summand);
            prop_assert_eq!(a.signs_seen, b.signs_seen);
        }

        #[test]
        fn witnesses_are_consistent(m in arb_square(5)) {
            let c = classify_formal_det(&m, 12).unwrap();
            let n = m.rows();
            if let Some(s) = &c.witness_sigma0 {
                prop_assert!((0..n).all(|i| !m.get(i, s.apply(i)).is_zero()));
            }
            if let Some(s) = &c.star_witness {
                prop_assert!((0..n).all(|i| !m.get(i, s.apply(i)).is_zero()));
                prop_assert!((0..n).any(|i| m.get(i, s.apply(i)) == Star));
            }
            if let Some((p, q)) = &c.conflict_witness {
                let val = |s: &Permutation| s.sign() * sign_product((0..n).map(|i| m.get(i, s.apply(i))));
                prop_assert_eq!(val(p), Plus);
                prop_assert_eq!(val(q), Minus);
            }
        }
    }

    #[test]
    fn uniform_sign_implies_positive_determinant_of_realizations() {
        // Every Star-free 3x3 pattern: when all summands are Plus, every
        // realization with weights in {1, 2} has positive determinant.
        let defs = [Zero, Plus, Minus];
        for code in 0..3usize.pow(9) {
            let mut c = code;
            let entries: Vec<Sign> = (0..9)
                .map(|_| {
                    let s = defs[c % 3];
                    c /= 3;
                    s
                })
                .collect();
            let m = SignMatrix::new(3, 3, entries).unwrap();
            let cls = classify_formal_det(&m, 12).unwrap();
            if cls.signs_seen != BTreeSet::from([Plus]) {
                continue;
            }
            for weights in 0..(1u32 << 9) {
                let r = m
                    .realize(|i, j| if weights >> (3 * i + j) & 1 == 1 { 2i64 } else { 1 })
                    .unwrap();
                let det = r.det_bareiss().unwrap();
                assert!(det > 0, "{m}\nweights {weights:b}");
            }
        }
    }
}
