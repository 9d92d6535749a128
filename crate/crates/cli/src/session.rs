//! Session files: a ring, named modules and primes, and an ordered task list.

use std::collections::HashSet;
use std::fmt;
use std::marker::PhantomData;
use std::sync::{Arc, OnceLock};

use indexmap::IndexMap;
use serde::de::{Deserializer, MapAccess, Visitor};
use serde::{Deserialize, Serialize};
use theta_core::homology::{dual_module, syzygy_of, ModulePresentation};
use theta_core::pairings::ClassExpression;
use theta_core::ring::{FieldSpec, HypersurfaceRing, PolyRing, Polynomial};
use theta_core::Error;

/// A JSON object whose keys must be unique, in file order.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct UniqueMap<T>(pub IndexMap<String, T>);

impl<T> Default for UniqueMap<T> {
    fn default() -> Self {
        UniqueMap(IndexMap::new())
    }
}

impl<'de, T: Deserialize<'de>> Deserialize<'de> for UniqueMap<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct UniqueVisitor<T>(PhantomData<T>);

        impl<'de, T: Deserialize<'de>> Visitor<'de> for UniqueVisitor<T> {
            type Value = UniqueMap<T>;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object with unique keys")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<Self::Value, A::Error> {
                let mut map = IndexMap::new();
                while let Some((key, value)) = access.next_entry::<String, T>()? {
                    if map.contains_key(&key) {
                        return Err(serde::de::Error::custom(format!("duplicate name `{key}`")));
                    }
                    map.insert(key, value);
                }
                Ok(UniqueMap(map))
            }
        }

        deserializer.deserialize_map(UniqueVisitor(PhantomData))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SessionFile {
    pub ring: RingSpec,
    #[serde(default)]
    pub modules: UniqueMap<ModuleSpec>,
    #[serde(default)]
    pub primes: UniqueMap<Vec<String>>,
    #[serde(default)]
    pub tasks: Vec<Task>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    #[serde(default)]
    pub characteristic: u64,
    pub variables: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<u32>>,
    /// Defining polynomial; `"0"` selects the polynomial ring itself.
    pub f: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModuleSpec {
    /// Row-major presentation matrix.
    Matrix(Vec<Vec<String>>),
    Cyclic {
        cyclic: Vec<String>,
    },
    Free {
        free: usize,
    },
    Syzygy {
        syzygy: SyzygySpec,
    },
    Dual {
        dual: String,
    },
    DirectSum {
        direct_sum: Vec<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SyzygySpec {
    pub module: String,
    pub index: usize,
}

/// A class: a module name, or a map from module names to coefficients.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ClassSpec {
    Module(String),
    Combination(UniqueMap<i64>),
}

impl ClassSpec {
    pub fn names(&self) -> Vec<&str> {
        match self {
            ClassSpec::Module(n) => vec![n.as_str()],
            ClassSpec::Combination(m) => m.0.keys().map(String::as_str).collect(),
        }
    }
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassSpec::Module(n) => write!(f, "[{n}]"),
            ClassSpec::Combination(m) => {
                let mut first = true;
                for (name, &c) in &m.0 {
                    match (first, c < 0) {
                        (true, true) => write!(f, "-")?,
                        (true, false) => {}
                        (false, true) => write!(f, " - ")?,
                        (false, false) => write!(f, " + ")?,
                    }
                    if c.abs() != 1 {
                        write!(f, "{}", c.abs())?;
                    }
                    write!(f, "[{name}]")?;
                    first = false;
                }
                if first {
                    write!(f, "0")?;
                }
                Ok(())
            }
        }
    }
}

/// A bounded free complex for Euler characteristics.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexSpec {
    Koszul {
        koszul: Vec<String>,
    },
    Maps {
        /// Row-major differentials `d_{low+1}, d_{low+2}, ...`.
        maps: Vec<Vec<Vec<String>>>,
        #[serde(default)]
        low: i64,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "task", rename_all = "snake_case", deny_unknown_fields)]
pub enum Task {
    Resolve {
        module: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        length: Option<usize>,
    },
    Mf {
        module: String,
    },
    Tor {
        left: String,
        right: String,
        index: usize,
    },
    Theta {
        left: ClassSpec,
        right: ClassSpec,
    },
    Chi {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        complex: Option<ComplexSpec>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        module: Option<String>,
        class: ClassSpec,
    },
    Length {
        module: String,
    },
    Hilbert {
        module: String,
    },
    LocalLength {
        module: String,
        prime: String,
    },
    C1 {
        module: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        primes: Option<Vec<String>>,
    },
    Gram {
        classes: Vec<ClassSpec>,
    },
    ConjectureReport {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        modules: Option<Vec<String>>,
    },
}

impl Task {
    pub fn kind(&self) -> &'static str {
        match self {
            Task::Resolve { .. } => "resolve",
            Task::Mf { .. } => "mf",
            Task::Tor { .. } => "tor",
            Task::Theta { .. } => "theta",
            Task::Chi { .. } => "chi",
            Task::Length { .. } => "length",
            Task::Hilbert { .. } => "hilbert",
            Task::LocalLength { .. } => "local_length",
            Task::C1 { .. } => "c1",
            Task::Gram { .. } => "gram",
            Task::ConjectureReport { .. } => "conjecture_report",
        }
    }

    fn module_references(&self) -> Vec<&str> {
        match self {
            Task::Resolve { module, .. }
            | Task::Mf { module }
            | Task::Length { module }
            | Task::Hilbert { module }
            | Task::LocalLength { module, .. }
            | Task::C1 { module, .. } => vec![module.as_str()],
            Task::Tor { left, right, .. } => vec![left.as_str(), right.as_str()],
            Task::Theta { left, right } => left.names().into_iter().chain(right.names()).collect(),
            Task::Chi { module, class, .. } => module.iter().map(String::as_str).chain(class.names()).collect(),
            Task::Gram { classes } => classes.iter().flat_map(ClassSpec::names).collect(),
            Task::ConjectureReport { modules } => modules.iter().flatten().map(String::as_str).collect(),
        }
    }

    fn prime_references(&self) -> Vec<&str> {
        match self {
            Task::LocalLength { prime, .. } => vec![prime.as_str()],
            Task::C1 { primes, .. } => primes.iter().flatten().map(String::as_str).collect(),
            _ => Vec::new(),
        }
    }
}

/// One problem found while checking a session file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemaError {
    /// Where the problem is, e.g. `tasks[2]` or `modules.Ax`.
    pub location: String,
    pub message: String,
}

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

fn schema(location: impl Into<String>, message: impl Into<String>) -> SchemaError {
    SchemaError {
        location: location.into(),
        message: message.into(),
    }
}

/// A module that is either given explicitly or derived (and computed on
/// first use) from earlier modules.
struct ModuleSlot {
    spec: ModuleSpec,
    value: OnceLock<Result<Arc<ModulePresentation>, Error>>,
}

/// A checked session: the ring is built, explicit modules are parsed and
/// every reference resolves to an earlier declaration.
pub struct Session {
    pub file: SessionFile,
    pub ring: Arc<HypersurfaceRing>,
    pub primes: IndexMap<String, Vec<Polynomial>>,
    modules: IndexMap<String, ModuleSlot>,
}

impl Session {
    /// Parses and checks a session; all problems found are returned.
    pub fn from_json(text: &str) -> Result<Session, Vec<SchemaError>> {
        let file: SessionFile = serde_json::from_str(text).map_err(|e| vec![schema("session", e.to_string())])?;
        Session::from_file(file)
    }

    pub fn from_file(file: SessionFile) -> Result<Session, Vec<SchemaError>> {
        let ring = build_ring(&file.ring).map_err(|e| vec![e])?;
        let mut errors = Vec::new();
        let mut modules: IndexMap<String, ModuleSlot> = IndexMap::new();
        for (name, spec) in &file.modules.0 {
            let location = format!("modules.{name}");
            let value = OnceLock::new();
            let deps: Vec<&str> = match spec {
                ModuleSpec::Matrix(rows) => {
                    match ModulePresentation::parse(ring.clone(), rows) {
                        Ok(m) => {
                            let _ = value.set(Ok(Arc::new(m)));
                        }
                        Err(e) => errors.push(schema(&location, describe(&e))),
                    }
                    Vec::new()
                }
                ModuleSpec::Cyclic { cyclic } => {
                    let gens: Result<Vec<_>, _> = cyclic.iter().map(|g| ring.ambient().parse(g)).collect();
                    match gens.and_then(|g| ModulePresentation::cyclic(ring.clone(), &g)) {
                        Ok(m) => {
                            let _ = value.set(Ok(Arc::new(m)));
                        }
                        Err(e) => errors.push(schema(&location, describe(&e))),
                    }
                    Vec::new()
                }
                ModuleSpec::Free { free } => {
                    let _ = value.set(Ok(Arc::new(ModulePresentation::free(ring.clone(), *free))));
                    Vec::new()
                }
                ModuleSpec::Syzygy { syzygy } => vec![syzygy.module.as_str()],
                ModuleSpec::Dual { dual } => vec![dual.as_str()],
                ModuleSpec::DirectSum { direct_sum } => direct_sum.iter().map(String::as_str).collect(),
            };
            for d in deps {
                if !modules.contains_key(d) {
                    errors.push(schema(
                        &location,
                        format!("refers to `{d}`, which is not declared before it"),
                    ));
                }
            }
            modules.insert(
                name.clone(),
                ModuleSlot {
                    spec: spec.clone(),
                    value,
                },
            );
        }
        let mut primes = IndexMap::new();
        for (name, gens) in &file.primes.0 {
            let parsed: Result<Vec<_>, _> = gens.iter().map(|g| ring.parse_element(g)).collect();
            match parsed {
                Ok(p) if p.iter().all(|g| g.homogeneous_degree().is_some() || g.is_zero()) => {
                    primes.insert(name.clone(), p);
                }
                Ok(_) => errors.push(schema(format!("primes.{name}"), "generators must be homogeneous")),
                Err(e) => errors.push(schema(format!("primes.{name}"), describe(&e))),
            }
        }
        for (i, task) in file.tasks.iter().enumerate() {
            let location = format!("tasks[{i}] ({})", task.kind());
            let mut seen = HashSet::new();
            for name in task.module_references() {
                if !modules.contains_key(name) && seen.insert(name) {
                    errors.push(schema(&location, format!("unknown module `{name}`")));
                }
            }
            for name in task.prime_references() {
                if !primes.contains_key(name) && seen.insert(name) {
                    errors.push(schema(&location, format!("unknown prime `{name}`")));
                }
            }
            match task {
                Task::Chi { complex, module, .. } => {
                    if complex.is_some() == module.is_some() {
                        errors.push(schema(&location, "give exactly one of `complex` and `module`"));
                    }
                    if let Some(c) = complex {
                        if let Err(e) = build_complex(&ring, c) {
                            errors.push(schema(&location, describe(&e)));
                        }
                    }
                }
                Task::Tor { index: 0, .. } => errors.push(schema(&location, "Tor index must be at least 1")),
                Task::Resolve { length: Some(0), .. } => {
                    errors.push(schema(&location, "resolution length must be at least 1"))
                }
                _ => {}
            }
        }
        if errors.is_empty() {
            Ok(Session {
                file,
                ring,
                primes,
                modules,
            })
        } else {
            Err(errors)
        }
    }

    pub fn module_names(&self) -> impl Iterator<Item = &str> {
        self.modules.keys().map(String::as_str)
    }

    /// The named module, computing derived modules on first use.
    pub fn module(&self, name: &str) -> Result<Arc<ModulePresentation>, Error> {
        let slot = self
            .modules
            .get(name)
            .ok_or_else(|| Error::Shape(format!("unknown module `{name}`")))?;
        slot.value
            .get_or_init(|| {
                let m = match &slot.spec {
                    ModuleSpec::Syzygy { syzygy } => syzygy_of(&*self.module(&syzygy.module)?, syzygy.index)?,
                    ModuleSpec::Dual { dual } => dual_module(&*self.module(dual)?)?,
                    ModuleSpec::DirectSum { direct_sum } => {
                        let mut acc = ModulePresentation::zero(self.ring.clone());
                        for n in direct_sum {
                            acc = acc.direct_sum(&*self.module(n)?)?;
                        }
                        acc
                    }
                    _ => unreachable!("explicit modules are built during checking"),
                };
                Ok(Arc::new(m))
            })
            .clone()
    }

    pub fn class(&self, spec: &ClassSpec) -> Result<ClassExpression, Error> {
        match spec {
            ClassSpec::Module(n) => Ok(ClassExpression::module(n.clone(), self.module(n)?)),
            ClassSpec::Combination(m) => m.0.iter().try_fold(ClassExpression::zero(), |acc, (n, &c)| {
                Ok(acc.with_term(n.clone(), self.module(n)?, c))
            }),
        }
    }
}

fn describe(e: &Error) -> String {
    format!("{} ({})", e, e.name())
}

fn build_ring(spec: &RingSpec) -> Result<Arc<HypersurfaceRing>, SchemaError> {
    let field = FieldSpec::new(spec.characteristic).map_err(|e| schema("ring.characteristic", describe(&e)))?;
    let mut seen = HashSet::new();
    for v in &spec.variables {
        if !seen.insert(v) {
            return Err(schema("ring.variables", format!("duplicate variable `{v}`")));
        }
    }
    let weights = spec.weights.clone().unwrap_or_else(|| vec![1; spec.variables.len()]);
    let ambient = PolyRing::new(field, spec.variables.clone(), weights).map_err(|e| schema("ring", describe(&e)))?;
    let f = ambient.parse(&spec.f).map_err(|e| schema("ring.f", describe(&e)))?;
    if f.is_zero() {
        return Ok(Arc::new(HypersurfaceRing::regular(ambient)));
    }
    HypersurfaceRing::new(ambient, f)
        .map(Arc::new)
        .map_err(|e| schema("ring.f", describe(&e)))
}

pub(crate) fn build_complex(
    ring: &Arc<HypersurfaceRing>,
    spec: &ComplexSpec,
) -> Result<theta_core::pairings::FreeComplex, Error> {
    use theta_core::homology::Matrix;
    use theta_core::pairings::FreeComplex;
    match spec {
        ComplexSpec::Koszul { koszul } => {
            let elements = koszul
                .iter()
                .map(|e| ring.parse_element(e))
                .collect::<Result<Vec<_>, _>>()?;
            FreeComplex::koszul(ring.clone(), &elements)
        }
        ComplexSpec::Maps { maps, low } => {
            let mut matrices = Vec::with_capacity(maps.len());
            for rows in maps {
                let cols = rows.first().map_or(0, Vec::len);
                if rows.iter().any(|r| r.len() != cols) {
                    return Err(Error::Shape("matrix rows have different lengths".into()));
                }
                let parsed = rows
                    .iter()
                    .map(|r| r.iter().map(|e| ring.parse_element(e)).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()?;
                matrices.push(Matrix::from_rows(parsed, cols));
            }
            FreeComplex::new(ring.clone(), matrices, *low)
        }
    }
}
