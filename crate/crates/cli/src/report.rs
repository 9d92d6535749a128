//! Machine-readable reports and their human-readable table form.

use std::fmt::Write as _;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub metadata: Metadata,
    pub tasks: Vec<TaskReport>,
    /// `"ok"` when every task succeeded, `"error"` otherwise.
    pub status: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub version: String,
    pub ring: String,
    pub characteristic: u64,
    pub variable_order: Vec<String>,
    pub weights: Vec<u32>,
    pub dimension: usize,
    pub monomial_order: String,
    pub module_order: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TaskReport {
    pub index: usize,
    pub task: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<TaskOutput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<TaskError>,
    /// Wall-clock time in microseconds; the only nondeterministic field.
    pub elapsed_us: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TaskError {
    /// Stable error tag such as `InfiniteLength`.
    pub name: String,
    pub message: String,
}

/// A length that may be infinite; serialized as a number or `"infinite"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LengthValue {
    Finite(u64),
    Infinite(String),
}

impl LengthValue {
    pub fn infinite() -> Self {
        LengthValue::Infinite("infinite".into())
    }
}

impl std::fmt::Display for LengthValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LengthValue::Finite(n) => write!(f, "{n}"),
            LengthValue::Infinite(_) => write!(f, "infinite"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InertiaReport {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl From<theta_core::numeq::Inertia> for InertiaReport {
    fn from(i: theta_core::numeq::Inertia) -> Self {
        InertiaReport {
            positive: i.positive,
            negative: i.negative,
            zero: i.zero,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThetaWindowReport {
    pub first_index: usize,
    pub tor_lengths: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TaskOutput {
    Resolve {
        module: String,
        betti: Vec<usize>,
        degrees: Vec<Vec<i64>>,
        differentials: Vec<Vec<Vec<String>>>,
        complete: bool,
        projective_dimension: Option<usize>,
        stable_from: Option<usize>,
    },
    Mf {
        module: String,
        size: usize,
        alpha: Vec<Vec<String>>,
        beta: Vec<Vec<String>>,
        /// `coker(alpha mod f)` is this syzygy of the module.
        syzygy_index: usize,
        betti: Vec<usize>,
        verified: bool,
    },
    Tor {
        left: String,
        right: String,
        index: usize,
        length: LengthValue,
    },
    Theta {
        left: String,
        right: String,
        value: i64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        window: Option<ThetaWindowReport>,
    },
    Chi {
        complex: String,
        class: String,
        value: i64,
    },
    Length {
        module: String,
        length: LengthValue,
    },
    Hilbert {
        module: String,
        numerator: String,
        denominator_weights: Vec<u32>,
        dimension: Option<usize>,
        length: Option<u64>,
        multiplicity: Option<u64>,
    },
    LocalLength {
        module: String,
        prime: String,
        length: u64,
    },
    C1 {
        module: String,
        class: String,
        multiplicities: IndexMap<String, i64>,
        warnings: Vec<String>,
    },
    Gram {
        classes: Vec<String>,
        matrix: Vec<Vec<i64>>,
        inertia: InertiaReport,
    },
    ConjectureReport {
        modules: Vec<String>,
        dimension: usize,
        matrix: Vec<Vec<i64>>,
        inertia: InertiaReport,
        sign: i64,
        adjusted_inertia: InertiaReport,
        kernel: Vec<Vec<i64>>,
        criterion: String,
        verdict: String,
    },
}

impl Report {
    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Report> {
        serde_json::from_str(text)
    }

    /// The report with all timing fields zeroed, for comparisons.
    pub fn without_timings(&self) -> Report {
        let mut r = self.clone();
        for t in &mut r.tasks {
            t.elapsed_us = 0;
        }
        r
    }

    /// Human-readable summary, one block per task.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let m = &self.metadata;
        let _ = writeln!(out, "theta-cas {}  ring {}  (dim {})", m.version, m.ring, m.dimension);
        let _ = writeln!(out, "order: {}, {}", m.monomial_order, m.module_order);
        for t in &self.tasks {
            let _ = write!(out, "[{}] {:<18}", t.index, t.task);
            match (&t.result, &t.error) {
                (_, Some(e)) => {
                    let _ = writeln!(out, "ERROR {}: {}", e.name, e.message);
                }
                (Some(r), None) => render(&mut out, r),
                (None, None) => {
                    let _ = writeln!(out);
                }
            }
        }
        let _ = writeln!(out, "status: {}", self.status);
        out
    }
}

fn matrix_lines(out: &mut String, rows: &[Vec<String>]) {
    let width = rows.iter().flatten().map(|s| s.len()).max().unwrap_or(0);
    for row in rows {
        let cells: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        let _ = writeln!(out, "      [ {} ]", cells.join("  "));
    }
}

fn int_matrix(m: &[Vec<i64>]) -> Vec<Vec<String>> {
    m.iter().map(|r| r.iter().map(i64::to_string).collect()).collect()
}

fn inertia(i: &InertiaReport) -> String {
    format!("(n+, n-, n0) = ({}, {}, {})", i.positive, i.negative, i.zero)
}

fn render(out: &mut String, r: &TaskOutput) {
    match r {
        TaskOutput::Resolve {
            module,
            betti,
            complete,
            projective_dimension,
            stable_from,
            ..
        } => {
            let _ = write!(out, "{module}: betti {betti:?}");
            if *complete {
                let _ = write!(out, ", pd {}", projective_dimension.unwrap_or(0));
            }
            if let Some(k) = stable_from {
                let _ = write!(out, ", periodic from {k}");
            }
            let _ = writeln!(out);
        }
        TaskOutput::Mf {
            module,
            size,
            alpha,
            beta,
            syzygy_index,
            verified,
            ..
        } => {
            let _ = writeln!(
                out,
                "{module}: {size}x{size} factorization of syzygy {syzygy_index}, alpha*beta = f*I: {verified}"
            );
            let _ = writeln!(out, "    alpha");
            matrix_lines(out, alpha);
            let _ = writeln!(out, "    beta");
            matrix_lines(out, beta);
        }
        TaskOutput::Tor {
            left,
            right,
            index,
            length,
        } => {
            let _ = writeln!(out, "length Tor_{index}({left}, {right}) = {length}");
        }
        TaskOutput::Theta {
            left,
            right,
            value,
            window,
        } => {
            let _ = write!(out, "theta({left}, {right}) = {value}");
            if let Some(w) = window {
                let _ = write!(
                    out,
                    "   (Tor lengths from index {}: {:?})",
                    w.first_index, w.tor_lengths
                );
            }
            let _ = writeln!(out);
        }
        TaskOutput::Chi { complex, class, value } => {
            let _ = writeln!(out, "chi({complex}; {class}) = {value}");
        }
        TaskOutput::Length { module, length } => {
            let _ = writeln!(out, "length({module}) = {length}");
        }
        TaskOutput::Hilbert {
            module,
            numerator,
            denominator_weights,
            dimension,
            multiplicity,
            ..
        } => {
            let den: Vec<String> = denominator_weights
                .iter()
                .map(|w| {
                    if *w == 1 {
                        "(1 - t)".to_string()
                    } else {
                        format!("(1 - t^{w})")
                    }
                })
                .collect();
            let _ = write!(out, "H({module}) = ({numerator}) / {}", den.join(""));
            if let Some(d) = dimension {
                let _ = write!(out, ", dim {d}");
            }
            if let Some(e) = multiplicity {
                let _ = write!(out, ", e {e}");
            }
            let _ = writeln!(out);
        }
        TaskOutput::LocalLength { module, prime, length } => {
            let _ = writeln!(out, "length of {module} at {prime} = {length}");
        }
        TaskOutput::C1 {
            module,
            class,
            warnings,
            ..
        } => {
            let _ = writeln!(out, "c1({module}) = {class}");
            for w in warnings {
                let _ = writeln!(out, "      warning: {w}");
            }
        }
        TaskOutput::Gram {
            classes,
            matrix,
            inertia: i,
        } => {
            let _ = writeln!(out, "Gram on {}: {}", classes.join(", "), inertia(i));
            matrix_lines(out, &int_matrix(matrix));
        }
        TaskOutput::ConjectureReport {
            modules,
            matrix,
            adjusted_inertia,
            kernel,
            criterion,
            verdict,
            ..
        } => {
            let _ = writeln!(out, "{verdict}: {criterion}");
            let _ = writeln!(out, "    modules {}", modules.join(", "));
            matrix_lines(out, &int_matrix(matrix));
            let _ = writeln!(out, "    sign-adjusted {}", inertia(adjusted_inertia));
            let _ = writeln!(out, "    kernel {kernel:?}");
        }
    }
}
