//! Finite group presentations with literal relator words, and their
//! ε-matrix of occurrence signs.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::signs::{Polarity, Sign, SignMatrix};

/// One signed occurrence of a generator in a word. `generator` is 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: usize,
    pub exponent: Polarity,
}

impl Letter {
    pub fn new(generator: usize, exponent: Polarity) -> Self {
        Letter {
            generator,
            exponent,
        }
    }

    pub fn inverse(self) -> Self {
        Letter {
            generator: self.generator,
            exponent: -self.exponent,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exponent {
            Polarity::Positive => write!(f, "g{}", self.generator + 1),
            Polarity::Negative => write!(f, "g{}^-1", self.generator + 1),
        }
    }
}

pub type Word = Vec<Letter>;

/// `true` iff the word freely reduces to the empty word.
pub fn word_is_trivial_free_reduction(word: &[Letter]) -> bool {
    let mut stack: Vec<Letter> = Vec::with_capacity(word.len());
    for &l in word {
        if stack.last() == Some(&l.inverse()) {
            stack.pop();
        } else {
            stack.push(l);
        }
    }
    stack.is_empty()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    num_generators: usize,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(num_generators: usize, relators: Vec<Word>) -> Result<Self> {
        for (j, w) in relators.iter().enumerate() {
            if let Some(l) = w.iter().find(|l| l.generator >= num_generators) {
                return Err(Error::Precondition(format!(
                    "relator {} uses generator {} of {num_generators}",
                    j + 1,
                    l.generator + 1
                )));
            }
        }
        Ok(Presentation {
            num_generators,
            relators,
        })
    }

    pub fn num_generators(&self) -> usize {
        self.num_generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// The generators × relators matrix recording how each generator occurs
    /// in each relator, read off the literal words (no free reduction).
    pub fn epsilon_matrix(&self) -> SignMatrix {
        let mut m = SignMatrix::filled(self.num_generators, self.relators.len(), Sign::Zero);
        for (j, word) in self.relators.iter().enumerate() {
            for l in word {
                let entry = match (m.get(l.generator, j), l.exponent) {
                    (Sign::Zero, e) => e.to_sign(),
                    (Sign::Plus, Polarity::Positive) => Sign::Plus,
                    (Sign::Minus, Polarity::Negative) => Sign::Minus,
                    _ => Sign::Star,
                };
                m.set(l.generator, j, entry);
            }
        }
        m
    }

    /// Renders the text format: `gens m`, then one relator per line.
    pub fn to_text(&self) -> String {
        let mut s = format!("gens {}\n", self.num_generators);
        for w in &self.relators {
            let line: Vec<String> = w.iter().map(Letter::to_string).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }
}

/// The ε-matrix of a presentation.
pub fn epsilon_matrix(p: &Presentation) -> SignMatrix {
    p.epsilon_matrix()
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for i in 0..self.num_generators {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "a{}", i + 1)?;
        }
        write!(f, " | ")?;
        for (j, w) in self.relators.iter().enumerate() {
            if j > 0 {
                write!(f, ", ")?;
            }
            if w.is_empty() {
                write!(f, "1")?;
            }
            for l in w {
                match l.exponent {
                    Polarity::Positive => write!(f, "a{}", l.generator + 1)?,
                    Polarity::Negative => write!(f, "a{}^-1", l.generator + 1)?,
                }
            }
        }
        write!(f, ">")
    }
}

fn parse_letter(tok: &str, m: usize, line: usize) -> Result<Letter> {
    let (index, exponent) = match tok.strip_suffix("^-1") {
        Some(rest) => (rest, Polarity::Negative),
        None => (tok, Polarity::Positive),
    };
    let k: usize = index
        .strip_prefix('g')
        .and_then(|d| {
            if d.bytes().all(|b| b.is_ascii_digit()) {
                d.parse().ok()
            } else {
                None
            }
        })
        .ok_or_else(|| Error::parse(line, format!("invalid letter {tok:?}")))?;
    if k == 0 || k > m {
        return Err(Error::parse(
            line,
            format!("generator index {k} outside 1..={m}"),
        ));
    }
    Ok(Letter::new(k - 1, exponent))
}

impl FromStr for Presentation {
    type Err = Error;

    /// Parses `gens m` followed by one relator per line. A blank line is an
    /// empty relator.
    fn from_str(text: &str) -> Result<Self> {
        let body = text.strip_suffix('\n').unwrap_or(text);
        let mut lines = body.split('\n');
        let header = lines.next().unwrap_or("");
        let mut head = header.split_whitespace();
        let m: usize = match (head.next(), head.next(), head.next()) {
            (Some("gens"), Some(n), None) => n
                .parse()
                .map_err(|_| Error::parse(1, format!("invalid generator count {n:?}")))?,
            _ => return Err(Error::parse(1, "expected `gens <m>`")),
        };
        let mut relators = Vec::new();
        if body.contains('\n') {
            for (k, line) in lines.enumerate() {
                let word = line
                    .split_whitespace()
                    .map(|tok| parse_letter(tok, m, k + 2))
                    .collect::<Result<Word>>()?;
                relators.push(word);
            }
        }
        Presentation::new(m, relators)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use Polarity::*;
    use Sign::*;

    fn pos(g: usize) -> Letter {
        Letter::new(g, Positive)
    }

    fn neg(g: usize) -> Letter {
        Letter::new(g, Negative)
    }

    #[test]
    fn cyclic_group_relator() {
        let p = Presentation::new(1, vec![vec![pos(0); 3]]).unwrap();
        assert_eq!(p.epsilon_matrix().to_rows(), vec![vec![Plus]]);
    }

    #[test]
    fn mixed_exponents_give_star() {
        let p = Presentation::new(1, vec![vec![pos(0), neg(0)]]).unwrap();
        assert_eq!(p.epsilon_matrix().to_rows(), vec![vec![Star]]);
    }

    #[test]
    fn two_generator_example() {
        let p = Presentation::new(2, vec![vec![pos(0), pos(1)], vec![pos(0), neg(1)]]).unwrap();
        assert_eq!(
            p.epsilon_matrix().to_rows(),
            vec![vec![Plus, Plus], vec![Plus, Minus]]
        );
    }

    #[test]
    fn absent_generator_row_is_zero() {
        let p = Presentation::new(3, vec![vec![pos(0)], vec![neg(2)]]).unwrap();
        let e = p.epsilon_matrix();
        assert_eq!((e.rows(), e.cols()), (3, 2));
        assert!(e.row(1).iter().all(|s| *s == Zero));
    }

    #[test]
    fn empty_relator_list() {
        let p = Presentation::new(2, vec![]).unwrap();
        let e = p.epsilon_matrix();
        assert_eq!((e.rows(), e.cols()), (2, 0));
    }

    #[test]
    fn out_of_range_generator_rejected() {
        assert!(Presentation::new(1, vec![vec![pos(1)]]).is_err());
    }

    #[test]
    fn free_reduction() {
        assert!(word_is_trivial_free_reduction(&[pos(0), neg(0)]));
        assert!(!word_is_trivial_free_reduction(&[pos(0), pos(1), neg(0), neg(1)]));
        assert!(word_is_trivial_free_reduction(&[]));
        assert!(word_is_trivial_free_reduction(&[pos(0), pos(1), neg(1), neg(0)]));
    }

    #[test]
    fn text_format() {
        let p: Presentation = "gens 1\ng1 g1 g1\n".parse().unwrap();
        assert_eq!(p, Presentation::new(1, vec![vec![pos(0); 3]]).unwrap());
        let q: Presentation = "gens 2\ng1 g2\ng1 g2^-1".parse().unwrap();
        assert_eq!(q.relators()[1], vec![pos(0), neg(1)]);
        assert_eq!(q.to_text().parse::<Presentation>().unwrap(), q);
        assert_eq!(q.to_string(), "<a1, a2 | a1a2, a1a2^-1>");
        let empty: Presentation = "gens 3".parse().unwrap();
        assert!(empty.relators().is_empty());
    }

    #[test]
    fn text_format_errors() {
        for bad in ["", "gen 1", "gens x", "gens 1\ng2", "gens 1\ng0", "gens 1\nh1", "gens 1\ng1^2"] {
            assert!(bad.parse::<Presentation>().is_err(), "{bad:?}");
        }
    }

    fn arb_presentation() -> impl Strategy<Value = Presentation> {
        (1usize..4).prop_flat_map(|m| {
            let letter = (0..m, any::<bool>())
                .prop_map(|(g, p)| Letter::new(g, if p { Positive } else { Negative }));
            proptest::collection::vec(proptest::collection::vec(letter, 0..7), 0..4)
                .prop_map(move |rels| Presentation::new(m, rels).unwrap())
        })
    }

    proptest! {
        #[test]
        fn epsilon_is_rotation_invariant(p in arb_presentation(), shift in 0usize..7) {
            let rotated: Vec<Word> = p.relators().iter().map(|w| {
                let mut w = w.clone();
                if !w.is_empty() {
                    let k = shift % w.len();
                    w.rotate_left(k);
                }
                w
            }).collect();
            let q = Presentation::new(p.num_generators(), rotated).unwrap();
            prop_assert_eq!(p.epsilon_matrix(), q.epsilon_matrix());
        }

        #[test]
        fn inverting_a_relator_negates_its_column(p in arb_presentation(), pick in 0usize..4) {
            prop_assume!(!p.relators().is_empty());
            let j = pick % p.relators().len();
            let mut rels = p.relators().to_vec();
            rels[j] = rels[j].iter().rev().map(|l| l.inverse()).collect();
            let q = Presentation::new(p.num_generators(), rels).unwrap();
            let (a, b) = (p.epsilon_matrix(), q.epsilon_matrix());
            for i in 0..a.rows() {
                for c in 0..a.cols() {
                    let expected = if c == j { -a.get(i, c) } else { a.get(i, c) };
                    prop_assert_eq!(b.get(i, c), expected);
                }
            }
        }

        #[test]
        fn epsilon_shape(p in arb_presentation()) {
            let e = p.epsilon_matrix();
            prop_assert_eq!(e.rows(), p.num_generators());
            prop_assert_eq!(e.cols(), p.relators().len());
        }
    }
}
