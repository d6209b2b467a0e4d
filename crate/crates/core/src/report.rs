//! Certificate reports, in a human-readable text form and a structured
//! (JSON) form that round-trips through serde.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::heegaard::{H1Order, HeegaardDiagram, StrongReport};
use crate::matchings::{recognize_s3, S3Verdict};
use crate::orderability::{
    check_lemma_matrix, check_notlo_bruteforce, column_report, BruteforceOutcome, ColumnStatus,
    FailedCondition, OrderabilityVerdict,
};
use crate::signs::SignMatrix;
use crate::Limits;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub genus: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub presentation: String,
    pub count_matrix: Vec<Vec<i64>>,
    pub algebraic_matrix: Vec<Vec<i64>>,
    pub determinant: i128,
    pub h1_order: H1Order,
    pub generator_count: usize,
    pub gradings: Vec<i64>,
    pub strong: StrongReport,
    pub epsilon_matrix: SignMatrix,
    pub orderability: OrderabilityVerdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s3: Option<S3Verdict>,
}

/// Runs every check on a diagram.
pub fn analyze(h: &HeegaardDiagram, limits: &Limits) -> Result<AnalysisReport> {
    let presentation = h.presentation();
    let generators = h.generators(limits.max_generators)?;
    let strong = h.strong_report(limits.max_generators)?;
    let epsilon_matrix = presentation.epsilon_matrix();
    let orderability = check_lemma_matrix(&epsilon_matrix, limits.max_perm_n)?;
    let s3 = if strong.is_strong && strong.h1_order == H1Order::Finite(1) {
        Some(recognize_s3(h, limits)?)
    } else {
        None
    };
    Ok(AnalysisReport {
        genus: h.genus(),
        label: h.label().map(str::to_owned),
        presentation: presentation.to_string(),
        count_matrix: h.count_matrix().to_rows(),
        algebraic_matrix: h.algebraic_matrix().to_rows(),
        determinant: strong.determinant,
        h1_order: strong.h1_order,
        generator_count: generators.len(),
        gradings: generators.iter().map(|x| x.grading.as_i64()).collect(),
        strong,
        epsilon_matrix,
        orderability,
        s3,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LoMode {
    Det,
    Bruteforce,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoReport {
    pub mode: LoMode,
    pub rows: usize,
    pub cols: usize,
    /// Status of each column of the unscaled matrix.
    pub columns: Vec<ColumnStatus>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub det: Option<OrderabilityVerdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bruteforce: Option<BruteforceOutcome>,
    /// The selected criterion certifies non-left-orderability.
    pub certified: bool,
}

pub fn check_lo(e: &SignMatrix, mode: LoMode, limits: &Limits) -> Result<LoReport> {
    let columns = column_report(e);
    let (det, bruteforce, certified) = match mode {
        LoMode::Det => {
            let v = check_lemma_matrix(e, limits.max_perm_n)?;
            let ok = v.is_not_left_orderable();
            (Some(v), None, ok)
        }
        LoMode::Bruteforce => {
            let b = check_notlo_bruteforce(e, limits.max_bruteforce_rows)?;
            let ok = b.holds;
            (None, Some(b), ok)
        }
    };
    Ok(LoReport {
        mode,
        rows: e.rows(),
        cols: e.cols(),
        columns,
        det,
        bruteforce,
        certified,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixReport {
    pub count_matrix: Vec<Vec<i64>>,
    pub algebraic_matrix: Vec<Vec<i64>>,
    pub determinant: i128,
    pub permanent: usize,
}

/// Intersection matrices of a diagram; the permanent is the generator count.
pub fn matrices(h: &HeegaardDiagram, limits: &Limits) -> Result<MatrixReport> {
    Ok(MatrixReport {
        count_matrix: h.count_matrix().to_rows(),
        algebraic_matrix: h.algebraic_matrix().to_rows(),
        determinant: h.determinant()?,
        permanent: h.generator_count(limits.max_generators)?,
    })
}

fn write_int_rows(f: &mut fmt::Formatter<'_>, rows: &[Vec<i64>]) -> fmt::Result {
    for row in rows {
        let cells: Vec<String> = row.iter().map(i64::to_string).collect();
        writeln!(f, "  {}", cells.join(" "))?;
    }
    Ok(())
}

fn write_sign_rows(f: &mut fmt::Formatter<'_>, m: &SignMatrix) -> fmt::Result {
    for line in m.to_string().lines() {
        writeln!(f, "  {line}")?;
    }
    Ok(())
}

impl fmt::Display for OrderabilityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderabilityVerdict::NotLeftOrderable {
                witness_sigma0,
                summand_sign,
            } => write!(
                f,
                "not left-orderable (witness permutation {witness_sigma0}, every nonzero summand {summand_sign})"
            ),
            OrderabilityVerdict::CriterionInapplicable { failed } => {
                write!(f, "criterion inapplicable: condition ({}) fails", failed.number())?;
                match failed {
                    FailedCondition::NoNonzeroSummand => {
                        write!(f, ", no permutation has all entries nonzero")
                    }
                    FailedCondition::StarInSummand { witness } => {
                        write!(f, ", nonzero summand through * at permutation {witness}")
                    }
                    FailedCondition::MixedSigns {
                        plus_witness,
                        minus_witness,
                    } => write!(
                        f,
                        ", summand + at {plus_witness} and summand - at {minus_witness}"
                    ),
                }
            }
        }
    }
}

impl fmt::Display for StrongReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "h1 order: {}", self.h1_order)?;
        writeln!(f, "determinant: {}", self.determinant)?;
        writeln!(f, "generators: {}", self.generator_count)?;
        writeln!(f, "euler characteristic: {}", self.euler_characteristic)?;
        writeln!(f, "gradings uniform: {}", self.gradings_uniform)?;
        write!(f, "strong: {}", self.is_strong)
    }
}

impl fmt::Display for S3Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S3 verdict: {}", self.outcome)?;
        if !self.trace.is_empty() {
            let steps: Vec<String> = self.trace.iter().map(ToString::to_string).collect();
            write!(f, "\npruning trace: {}", steps.join(" "))?;
        }
        if let Some(stalled) = &self.stalled {
            write!(f, "\nstalled on leafless graph {}", stalled.graph)?;
        }
        Ok(())
    }
}

impl fmt::Display for AnalysisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "genus: {}", self.genus)?;
        if let Some(label) = &self.label {
            writeln!(f, "label: {label}")?;
        }
        writeln!(f, "presentation: {}", self.presentation)?;
        writeln!(f, "count matrix:")?;
        write_int_rows(f, &self.count_matrix)?;
        writeln!(f, "algebraic matrix:")?;
        write_int_rows(f, &self.algebraic_matrix)?;
        let gradings: Vec<&str> = self
            .gradings
            .iter()
            .map(|&g| if g > 0 { "+" } else { "-" })
            .collect();
        writeln!(f, "gradings: {}", gradings.join(" "))?;
        writeln!(f, "{}", self.strong)?;
        writeln!(f, "epsilon matrix:")?;
        write_sign_rows(f, &self.epsilon_matrix)?;
        writeln!(f, "orderability: {}", self.orderability)?;
        if let Some(s3) = &self.s3 {
            writeln!(f, "{s3}")?;
        }
        Ok(())
    }
}

impl fmt::Display for LoReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "matrix: {}x{}", self.rows, self.cols)?;
        for (j, c) in self.columns.iter().enumerate() {
            let status = match c {
                ColumnStatus::Zero => "zero",
                ColumnStatus::AllPlus => "all +",
                ColumnStatus::AllMinus => "all -",
                ColumnStatus::Mixed => "mixed + and -",
                ColumnStatus::HasStar => "contains *",
            };
            writeln!(f, "column {}: {status}", j + 1)?;
        }
        if let Some(v) = &self.det {
            writeln!(f, "determinant criterion: {v}")?;
        }
        if let Some(b) = &self.bruteforce {
            if b.holds {
                writeln!(
                    f,
                    "scaling criterion holds for all {} nonzero scalings: not left-orderable",
                    b.scalings_checked
                )?;
            } else if let Some(d) = &b.witness {
                writeln!(
                    f,
                    "scaling criterion inapplicable: scaling {d} leaves no uniform column"
                )?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for MatrixReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "count matrix:")?;
        write_int_rows(f, &self.count_matrix)?;
        writeln!(f, "algebraic matrix:")?;
        write_int_rows(f, &self.algebraic_matrix)?;
        writeln!(f, "determinant: {}", self.determinant)?;
        writeln!(f, "permanent: {}", self.permanent)
    }
}
