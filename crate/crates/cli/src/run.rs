//! Executes the tasks of a checked session and assembles the report.

use std::time::Instant;

use indexmap::IndexMap;
use theta_core::groebner::{ModuleOrder, Staircase};
use theta_core::homology::{extract_matrix_factorization, Resolution};
use theta_core::numeq::{conjecture_report, gram_matrix, signature_i64};
use theta_core::pairings::{
    c1_torsion, chi_complex, local_length_at_prime, ClassExpression, FreeComplex, PairingEngine,
};
use theta_core::Error;

use crate::report::{
    InertiaReport, LengthValue, Metadata, Report, TaskError, TaskOutput, TaskReport, ThetaWindowReport,
};
use crate::session::{build_complex, ClassSpec, ComplexSpec, Session, Task};

/// Default resolution length: the theta window plus its periodicity witness.
pub fn default_length(dimension: usize) -> usize {
    dimension + 4
}

fn length_value(s: Staircase) -> LengthValue {
    match s {
        Staircase::Finite(n) => LengthValue::Finite(n),
        Staircase::Infinite => LengthValue::infinite(),
    }
}

pub fn metadata(session: &Session) -> Metadata {
    let ring = &session.ring;
    Metadata {
        version: env!("CARGO_PKG_VERSION").to_string(),
        ring: ring.describe(),
        characteristic: ring.field().characteristic(),
        variable_order: ring.ambient().names().to_vec(),
        weights: ring.ambient().weights().to_vec(),
        dimension: ring.dimension(),
        monomial_order: "weighted graded reverse lexicographic".into(),
        module_order: ModuleOrder::POT.describe().into(),
    }
}

/// Runs every task in order; a failing task is recorded and the run
/// continues with the next one.
pub fn run_session(session: &Session) -> Report {
    let engine = PairingEngine::new();
    let mut tasks = Vec::with_capacity(session.file.tasks.len());
    for (index, task) in session.file.tasks.iter().enumerate() {
        let start = Instant::now();
        let outcome = run_task(session, &engine, task);
        let elapsed_us = start.elapsed().as_micros() as u64;
        let (result, error) = match outcome {
            Ok(r) => (Some(r), None),
            Err(e) => (
                None,
                Some(TaskError {
                    name: e.name().to_string(),
                    message: e.to_string(),
                }),
            ),
        };
        tasks.push(TaskReport {
            index,
            task: task.kind().to_string(),
            result,
            error,
            elapsed_us,
        });
    }
    let status = if tasks.iter().all(|t| t.error.is_none()) {
        "ok"
    } else {
        "error"
    };
    Report {
        metadata: metadata(session),
        tasks,
        status: status.to_string(),
    }
}

fn run_task(session: &Session, engine: &PairingEngine, task: &Task) -> Result<TaskOutput, Error> {
    let ring = &session.ring;
    let d = ring.dimension();
    match task {
        Task::Resolve { module, length } => {
            let m = session.module(module)?;
            let res = Resolution::compute(&m, length.unwrap_or_else(|| default_length(d)));
            let differentials = (1..=res.length())
                .map(|i| res.differential(i).map(|x| x.format(ring)))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(TaskOutput::Resolve {
                module: module.clone(),
                betti: res.betti_numbers(),
                degrees: (0..res.betti_numbers().len())
                    .map(|i| res.degrees(i).to_vec())
                    .collect(),
                differentials,
                complete: res.is_complete(),
                projective_dimension: res.projective_dimension(),
                stable_from: res.stable_start(),
            })
        }
        Task::Mf { module } => {
            let m = session.module(module)?;
            let res = Resolution::compute(&m, default_length(d));
            let mf = extract_matrix_factorization(&res)?;
            Ok(TaskOutput::Mf {
                module: module.clone(),
                size: mf.size(),
                alpha: mf.alpha().format(ring),
                beta: mf.beta().format(ring),
                syzygy_index: mf.syzygy_shift(),
                betti: res.betti_numbers(),
                verified: mf.verify(),
            })
        }
        Task::Tor { left, right, index } => {
            let (m, n) = (session.module(left)?, session.module(right)?);
            Ok(TaskOutput::Tor {
                left: left.clone(),
                right: right.clone(),
                index: *index,
                length: length_value(engine.tor_length(&m, &n, *index)?),
            })
        }
        Task::Theta { left, right } => {
            let window = match (left, right) {
                (ClassSpec::Module(a), ClassSpec::Module(b)) => {
                    let w = engine.theta_window(&*session.module(a)?, &*session.module(b)?)?;
                    Some(ThetaWindowReport {
                        first_index: w.first_index,
                        tor_lengths: w.lengths.to_vec(),
                    })
                }
                _ => None,
            };
            let value = engine.theta_class(&session.class(left)?, &session.class(right)?)?;
            Ok(TaskOutput::Theta {
                left: left.to_string(),
                right: right.to_string(),
                value,
                window,
            })
        }
        Task::Chi { complex, module, class } => {
            let (complex, label) = match (complex, module) {
                (Some(c), _) => (build_complex(ring, c)?, describe_complex(c)),
                (None, Some(n)) => {
                    let m = session.module(n)?;
                    if m.length().finite().is_none() {
                        return Err(Error::NotFiniteLength);
                    }
                    (FreeComplex::resolving(&m)?, format!("resolution of {n}"))
                }
                (None, None) => return Err(Error::Shape("chi needs a complex or a module".into())),
            };
            Ok(TaskOutput::Chi {
                complex: label,
                class: class.to_string(),
                value: chi_complex(&complex, &session.class(class)?)?,
            })
        }
        Task::Length { module } => Ok(TaskOutput::Length {
            module: module.clone(),
            length: length_value(session.module(module)?.length()),
        }),
        Task::Hilbert { module } => {
            let m = session.module(module)?;
            let h = m.hilbert_series();
            Ok(TaskOutput::Hilbert {
                module: module.clone(),
                numerator: h.numerator().format(),
                denominator_weights: h.weights().to_vec(),
                dimension: h.dimension(),
                length: h.length(),
                multiplicity: h.multiplicity().ok(),
            })
        }
        Task::LocalLength { module, prime } => {
            let m = session.module(module)?;
            Ok(TaskOutput::LocalLength {
                module: module.clone(),
                prime: prime.clone(),
                length: local_length_at_prime(&m, &session.primes[prime.as_str()])?,
            })
        }
        Task::C1 { module, primes } => {
            let m = session.module(module)?;
            let names: Vec<&String> = match primes {
                Some(p) => p.iter().collect(),
                None => session.primes.keys().collect(),
            };
            let list: Vec<(String, Vec<_>)> = names
                .iter()
                .map(|n| ((*n).clone(), session.primes[n.as_str()].clone()))
                .collect();
            let c = c1_torsion(&m, &list)?;
            let multiplicities: IndexMap<String, i64> = c.class.terms().map(|(n, k)| (n.to_string(), k)).collect();
            Ok(TaskOutput::C1 {
                module: module.clone(),
                class: c.class.to_string(),
                multiplicities,
                warnings: c.warnings,
            })
        }
        Task::Gram { classes } => {
            let exprs = classes
                .iter()
                .map(|c| session.class(c))
                .collect::<Result<Vec<_>, _>>()?;
            let matrix = gram_matrix(engine, &exprs)?;
            Ok(TaskOutput::Gram {
                classes: classes.iter().map(ToString::to_string).collect(),
                inertia: InertiaReport::from(signature_i64(&matrix)?),
                matrix,
            })
        }
        Task::ConjectureReport { modules } => {
            let names: Vec<String> = match modules {
                Some(m) => m.clone(),
                None => session.module_names().map(str::to_string).collect(),
            };
            let classes = names
                .iter()
                .map(|n| Ok((n.clone(), ClassExpression::module(n.clone(), session.module(n)?))))
                .collect::<Result<Vec<_>, Error>>()?;
            let r = conjecture_report(engine, d, &classes)?;
            Ok(TaskOutput::ConjectureReport {
                modules: r.names,
                dimension: r.dimension,
                matrix: r.matrix,
                inertia: r.inertia.into(),
                sign: r.sign,
                adjusted_inertia: r.adjusted_inertia.into(),
                kernel: r.kernel,
                criterion: r.criterion,
                verdict: r.verdict.as_str().to_string(),
            })
        }
    }
}

fn describe_complex(c: &ComplexSpec) -> String {
    match c {
        ComplexSpec::Koszul { koszul } => format!("Koszul({})", koszul.join(", ")),
        ComplexSpec::Maps { maps, low } => format!("complex of length {} from index {low}", maps.len()),
    }
}
