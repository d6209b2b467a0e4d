//! Heegaard diagrams reduced to their signed intersection words.
//!
//! A diagram of genus `g` is stored as `g` cyclic words, one per β curve,
//! listing the α curve and local intersection sign of each point met while
//! traversing that β curve. Everything computed here (the induced
//! presentation, intersection matrices, Floer generators with their gradings,
//! the strong-diagram test) depends only on this data.

use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intmatrix::IntMatrix;
use crate::permutation::Permutation;
use crate::presentation::{Letter, Presentation};
use crate::signs::{for_each_transversal, Polarity};

/// Default cap on the number of generators enumerated.
pub const DEFAULT_MAX_GENERATORS: usize = 1_000_000;

/// A point of `α_alpha ∩ β`, `alpha` 0-based. Its β curve and position are
/// given by where it is stored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IntersectionPoint {
    pub alpha: usize,
    pub sign: Polarity,
}

impl IntersectionPoint {
    pub fn new(alpha: usize, sign: Polarity) -> Self {
        IntersectionPoint { alpha, sign }
    }
}

/// Address of a point: β word and position within it, both 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PointRef {
    pub beta: usize,
    pub position: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "DiagramFile", into = "DiagramFile")]
pub struct HeegaardDiagram {
    genus: usize,
    beta_words: Vec<Vec<IntersectionPoint>>,
    label: Option<String>,
}

/// On-disk shape: `{"genus": g, "beta": [[[alpha, sign], ...], ...]}` with
/// 1-based α indices and signs `1` / `-1`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DiagramFile {
    genus: usize,
    beta: Vec<Vec<(usize, Polarity)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

impl TryFrom<DiagramFile> for HeegaardDiagram {
    type Error = Error;

    fn try_from(f: DiagramFile) -> Result<Self> {
        let words = f
            .beta
            .into_iter()
            .map(|w| {
                w.into_iter()
                    .map(|(a, s)| {
                        if a == 0 {
                            Err(Error::Precondition("alpha indices are 1-based".into()))
                        } else {
                            Ok(IntersectionPoint::new(a - 1, s))
                        }
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let mut h = HeegaardDiagram::new(f.genus, words)?;
        h.label = f.label;
        Ok(h)
    }
}

impl From<HeegaardDiagram> for DiagramFile {
    fn from(h: HeegaardDiagram) -> Self {
        DiagramFile {
            genus: h.genus,
            beta: h
                .beta_words
                .into_iter()
                .map(|w| w.into_iter().map(|p| (p.alpha + 1, p.sign)).collect())
                .collect(),
            label: h.label,
        }
    }
}

impl HeegaardDiagram {
    pub fn new(genus: usize, beta_words: Vec<Vec<IntersectionPoint>>) -> Result<Self> {
        if genus == 0 {
            return Err(Error::Precondition("genus must be at least 1".into()));
        }
        if beta_words.len() != genus {
            return Err(Error::Precondition(format!(
                "genus {genus} diagram with {} beta words",
                beta_words.len()
            )));
        }
        for (j, w) in beta_words.iter().enumerate() {
            if let Some(p) = w.iter().find(|p| p.alpha >= genus) {
                return Err(Error::Precondition(format!(
                    "beta word {} meets alpha {} in a genus {genus} diagram",
                    j + 1,
                    p.alpha + 1
                )));
            }
        }
        Ok(HeegaardDiagram {
            genus,
            beta_words,
            label: None,
        })
    }

    /// Convenience constructor from 1-based `(alpha, ±1)` pairs.
    pub fn from_pairs(genus: usize, words: &[&[(usize, i64)]]) -> Result<Self> {
        let beta_words = words
            .iter()
            .map(|w| {
                w.iter()
                    .map(|&(a, s)| {
                        let sign = Polarity::from_i64(s)
                            .ok_or_else(|| Error::Precondition(format!("sign {s}")))?;
                        if a == 0 {
                            return Err(Error::Precondition("alpha indices are 1-based".into()));
                        }
                        Ok(IntersectionPoint::new(a - 1, sign))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        HeegaardDiagram::new(genus, beta_words)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn beta_words(&self) -> &[Vec<IntersectionPoint>] {
        &self.beta_words
    }

    pub fn point(&self, r: PointRef) -> IntersectionPoint {
        self.beta_words[r.beta][r.position]
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// Reads the relator of each β word in stored order: point on `α_i`
    /// with sign `η` contributes `a_i^η`.
    pub fn presentation(&self) -> Presentation {
        let relators = self
            .beta_words
            .iter()
            .map(|w| w.iter().map(|p| Letter::new(p.alpha, p.sign)).collect())
            .collect();
        Presentation::new(self.genus, relators).expect("alpha indices validated")
    }

    /// `C[i][j] = |α_i ∩ β_j|`.
    pub fn count_matrix(&self) -> IntMatrix<i64> {
        let mut c = IntMatrix::zeros(self.genus, self.genus);
        for (j, w) in self.beta_words.iter().enumerate() {
            for p in w {
                *c.get_mut(p.alpha, j) += 1;
            }
        }
        c
    }

    /// `A[i][j]` = algebraic intersection number of `α_i` and `β_j`.
    pub fn algebraic_matrix(&self) -> IntMatrix<i64> {
        let mut a = IntMatrix::zeros(self.genus, self.genus);
        for (j, w) in self.beta_words.iter().enumerate() {
            for p in w {
                *a.get_mut(p.alpha, j) += p.sign.as_i64();
            }
        }
        a
    }

    /// `det A`, exactly.
    pub fn determinant(&self) -> Result<i128> {
        self.algebraic_matrix().map(|&v| v as i128).det_bareiss()
    }

    pub fn h1_order(&self) -> Result<H1Order> {
        Ok(H1Order::from_determinant(self.determinant()?))
    }

    /// Points of `α_i ∩ β_j`, by position, indexed `[i][j]`.
    fn point_table(&self) -> Vec<Vec<Vec<usize>>> {
        let g = self.genus;
        let mut table = vec![vec![Vec::new(); g]; g];
        for (j, w) in self.beta_words.iter().enumerate() {
            for (pos, p) in w.iter().enumerate() {
                table[p.alpha][j].push(pos);
            }
        }
        table
    }

    /// Number of generators, the permanent of the count matrix. Errors once
    /// the running count passes `cap`.
    pub fn generator_count(&self, cap: usize) -> Result<usize> {
        let table = self.point_table();
        let allowed = |i: usize, j: usize| !table[i][j].is_empty();
        let mut total = 0usize;
        let mut over = false;
        for_each_transversal(self.genus, &allowed, None, &mut |images| {
            let term = images
                .iter()
                .enumerate()
                .try_fold(1usize, |acc, (i, &j)| acc.checked_mul(table[i][j].len()));
            match term.and_then(|t| total.checked_add(t)) {
                Some(t) if t <= cap => {
                    total = t;
                    ControlFlow::Continue(())
                }
                _ => {
                    over = true;
                    ControlFlow::Break(())
                }
            }
        });
        if over {
            return Err(Error::ResourceLimit {
                what: "generator count",
                limit: cap,
            });
        }
        Ok(total)
    }

    /// All generators, ordered by `σ` and then by point choices, each tagged
    /// with its grading `sign(σ)·∏ η(x_i)`.
    pub fn generators(&self, cap: usize) -> Result<Vec<Generator>> {
        let table = self.point_table();
        let allowed = |i: usize, j: usize| !table[i][j].is_empty();
        let mut out = Vec::new();
        let mut over = false;
        for_each_transversal(self.genus, &allowed, None, &mut |images| {
            let sigma = Permutation::from_images(images.to_vec()).expect("transversal");
            let parity = if sigma.is_even() {
                Polarity::Positive
            } else {
                Polarity::Negative
            };
            let lists: Vec<&Vec<usize>> = images
                .iter()
                .enumerate()
                .map(|(i, &j)| &table[i][j])
                .collect();
            let mut odometer = vec![0usize; lists.len()];
            loop {
                if out.len() == cap {
                    over = true;
                    return ControlFlow::Break(());
                }
                let choices: Vec<PointRef> = odometer
                    .iter()
                    .enumerate()
                    .map(|(i, &k)| PointRef {
                        beta: images[i],
                        position: lists[i][k],
                    })
                    .collect();
                let grading = choices
                    .iter()
                    .fold(parity, |acc, &r| acc * self.point(r).sign);
                out.push(Generator {
                    sigma: sigma.clone(),
                    choices,
                    grading,
                });
                let mut k = lists.len();
                loop {
                    if k == 0 {
                        return ControlFlow::Continue(());
                    }
                    k -= 1;
                    odometer[k] += 1;
                    if odometer[k] < lists[k].len() {
                        break;
                    }
                    odometer[k] = 0;
                }
            }
        });
        if over {
            return Err(Error::ResourceLimit {
                what: "generator count",
                limit: cap,
            });
        }
        Ok(out)
    }

    /// Sum of gradings over all generators.
    pub fn euler_characteristic(&self, cap: usize) -> Result<i64> {
        Ok(self
            .generators(cap)?
            .iter()
            .map(|x| x.grading.as_i64())
            .sum())
    }

    pub fn strong_report(&self, cap: usize) -> Result<StrongReport> {
        let determinant = self.determinant()?;
        let h1_order = H1Order::from_determinant(determinant);
        let gens = self.generators(cap)?;
        let euler_characteristic = gens.iter().map(|x| x.grading.as_i64()).sum();
        let gradings_uniform = gens.windows(2).all(|w| w[0].grading == w[1].grading);
        let generator_count = gens.len();
        let is_strong = match h1_order {
            H1Order::Finite(n) => n > 0 && n == generator_count as u128,
            H1Order::B1Positive => false,
        };
        Ok(StrongReport {
            h1_order,
            determinant,
            generator_count,
            gradings_uniform,
            is_strong,
            euler_characteristic,
        })
    }

    pub fn is_strong(&self, cap: usize) -> Result<bool> {
        Ok(self.strong_report(cap)?.is_strong)
    }

    /// Reverses the orientation of `α_i` (0-based): every point on it
    /// changes sign.
    pub fn flip_alpha_orientation(&self, alpha: usize) -> Result<Self> {
        if alpha >= self.genus {
            return Err(Error::Precondition(format!(
                "alpha {} out of range for genus {}",
                alpha + 1,
                self.genus
            )));
        }
        let mut h = self.clone();
        for w in &mut h.beta_words {
            for p in w.iter_mut().filter(|p| p.alpha == alpha) {
                p.sign = -p.sign;
            }
        }
        Ok(h)
    }

    /// Rotates β word `beta` (0-based) left by `shift` points.
    pub fn rotate_beta(&self, beta: usize, shift: usize) -> Result<Self> {
        if beta >= self.genus {
            return Err(Error::Precondition(format!(
                "beta {} out of range for genus {}",
                beta + 1,
                self.genus
            )));
        }
        let mut h = self.clone();
        let w = &mut h.beta_words[beta];
        if !w.is_empty() {
            let k = shift % w.len();
            w.rotate_left(k);
        }
        Ok(h)
    }

    /// Compact JSON document followed by a newline.
    pub fn to_file_string(&self) -> String {
        let mut s = serde_json::to_string(self).expect("diagram serializes");
        s.push('\n');
        s
    }
}

impl FromStr for HeegaardDiagram {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))
    }
}

impl fmt::Display for HeegaardDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "genus {}", self.genus)?;
        for (j, w) in self.beta_words.iter().enumerate() {
            write!(f, "\n  beta {}:", j + 1)?;
            for p in w {
                let s = if p.sign == Polarity::Positive { '+' } else { '-' };
                write!(f, " {}{}", p.alpha + 1, s)?;
            }
        }
        Ok(())
    }
}

/// The standard genus-one diagram of `L(p, q)`: one β word of `p` positive
/// points on the single α curve. `p = 1` is the standard diagram of `S³`.
pub fn gen_lens(p: usize) -> Result<HeegaardDiagram> {
    if p == 0 {
        return Err(Error::Precondition("lens space needs p >= 1".into()));
    }
    HeegaardDiagram::new(
        1,
        vec![vec![IntersectionPoint::new(0, Polarity::Positive); p]],
    )
}

/// [`gen_lens`] with `q` recorded as a label; it does not change the words.
pub fn gen_lens_labeled(p: usize, q: Option<u64>) -> Result<HeegaardDiagram> {
    let h = gen_lens(p)?;
    Ok(match q {
        Some(q) => h.with_label(format!("L({p},{q})")),
        None => h,
    })
}

/// A Floer generator: one point on each `α_i`, lying in `β_{σ(i)}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub sigma: Permutation,
    pub choices: Vec<PointRef>,
    pub grading: Polarity,
}

/// `|H₁|` from the algebraic intersection matrix; a zero determinant means
/// positive first Betti number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum H1Order {
    Finite(u128),
    B1Positive,
}

impl H1Order {
    pub fn from_determinant(det: i128) -> Self {
        if det == 0 {
            H1Order::B1Positive
        } else {
            H1Order::Finite(det.unsigned_abs())
        }
    }

    pub fn finite(self) -> Option<u128> {
        match self {
            H1Order::Finite(n) => Some(n),
            H1Order::B1Positive => None,
        }
    }
}

impl fmt::Display for H1Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            H1Order::Finite(n) => write!(f, "{n}"),
            H1Order::B1Positive => write!(f, "b1 positive"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrongReport {
    pub h1_order: H1Order,
    pub determinant: i128,
    pub generator_count: usize,
    pub gradings_uniform: bool,
    pub is_strong: bool,
    pub euler_characteristic: i64,
}
