//! Named gate definitions and the gate registry.
//!
//! Six gates are built in: the plumbing set NOT, CNOT, TOFFOLI and
//! FREDKIN, plus two 4-bit gates. TSG is a fully reversible gate that
//! embeds a full adder when its C input is held at 0; PRG is the
//! BCD-to-excess-3 gate, a permutation of the 4-bit space whose declared
//! domain `{0..9}` is where its behavior is specified -- on those inputs
//! it computes `x + 3`.
//!
//! Every gate definition is verified at construction: a declared domain
//! is only accepted if the table really is injective there. User gates
//! come from gate-spec files (see [`crate::format::gatespec`]) and pass
//! through the same checks.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::domain::InputDomain;
use crate::error::{Collision, Error, Result};
use crate::partial::{CompletionStrategy, PartialSpec};
use crate::table::{Injectivity, TruthTable};

/// Where a gate definition came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Builtin,
    UserFile,
}

/// A named gate: truth-table semantics plus an optional declared domain
/// over which injectivity is guaranteed.
#[derive(Debug, Clone)]
pub struct GateDef {
    name: String,
    table: TruthTable,
    declared_domain: Option<InputDomain>,
    provenance: Provenance,
    description: Option<String>,
}

/// Semantic equality: name, table and declared domain. Provenance and
/// description are bookkeeping and do not affect behavior.
impl PartialEq for GateDef {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.table == other.table
            && self.declared_domain == other.declared_domain
    }
}

impl Eq for GateDef {}

impl GateDef {
    /// Build a gate, enforcing the declared-domain invariant: when a
    /// domain is present the table must be injective on it.
    pub fn new(
        name: impl Into<String>,
        table: TruthTable,
        declared_domain: Option<InputDomain>,
        provenance: Provenance,
    ) -> Result<Self> {
        if let Some(domain) = &declared_domain {
            if domain.width() != table.in_width() {
                return Err(Error::WidthMismatch {
                    expected: table.in_width(),
                    actual: domain.width(),
                });
            }
            if let Injectivity::Collisions(collisions) = table.injective_on(domain)? {
                return Err(Error::NotInjective { collisions });
            }
        }
        Ok(GateDef {
            name: name.into(),
            table,
            declared_domain,
            provenance,
            description: None,
        })
    }

    pub fn with_description(mut self, description: impl Into<String>) -> Self {
        self.description = Some(description.into());
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn table(&self) -> &TruthTable {
        &self.table
    }

    pub fn in_width(&self) -> u32 {
        self.table.in_width()
    }

    pub fn out_width(&self) -> u32 {
        self.table.out_width()
    }

    pub fn declared_domain(&self) -> Option<&InputDomain> {
        self.declared_domain.as_ref()
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn description(&self) -> Option<&str> {
        self.description.as_deref()
    }

    /// Reversibility verdict for this gate's table against its declared
    /// domain.
    pub fn verify(&self) -> Reversibility {
        verify_table(&self.table, self.declared_domain.as_ref())
    }
}

/// Reversibility verdict for a gate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reversibility {
    /// The table is a permutation of its full input space.
    FullyReversible,
    /// Not a permutation, but injective on the given domain.
    PartiallyReversible(InputDomain),
    /// Neither; carries every colliding input pair over the checked
    /// domain.
    Irreversible(Vec<Collision>),
}

/// Classify `table`, optionally against a declared domain.
///
/// All outcomes are verdicts; this never errors. A square table that is
/// a permutation is fully reversible regardless of any domain. Otherwise
/// a table injective on the declared domain is partially reversible
/// there, and anything else is irreversible with the colliding pairs
/// reported over the declared domain (or the full input space when no
/// domain was given).
pub fn verify_table(table: &TruthTable, declared_domain: Option<&InputDomain>) -> Reversibility {
    if table.in_width() == table.out_width()
        && table.is_bijective().expect("square table")
    {
        return Reversibility::FullyReversible;
    }
    let checked = match declared_domain {
        Some(domain) if domain.width() == table.in_width() => domain.clone(),
        _ => InputDomain::full(table.in_width()).expect("table width is a valid domain width"),
    };
    match table.injective_on(&checked).expect("width checked above") {
        Injectivity::Injective if declared_domain.is_some() => {
            Reversibility::PartiallyReversible(checked)
        }
        Injectivity::Injective => {
            // Injective everywhere but not square: still not a
            // reversible gate, and there is no pair to show.
            Reversibility::Irreversible(Vec::new())
        }
        Injectivity::Collisions(collisions) => Reversibility::Irreversible(collisions),
    }
}

/// Propose a new partially reversible gate from an output assignment.
///
/// The table is the lexicographic completion of `spec`, so the gate is a
/// true permutation that restricts to the spec on its domain; the
/// declared domain records where the behavior was actually specified.
pub fn synthesize_prg(spec: &PartialSpec, name: impl Into<String>) -> Result<GateDef> {
    let table = spec.complete_to_permutation(CompletionStrategy::Lexicographic)?;
    GateDef::new(
        name,
        table,
        Some(spec.domain().clone()),
        Provenance::UserFile,
    )
}

/// Names accepted by [`builtin`], in registration order.
pub const BUILTIN_GATE_NAMES: [&str; 6] = ["NOT", "CNOT", "TOFFOLI", "FREDKIN", "TSG", "PRG"];

/// Look up a built-in gate by name (case-insensitive).
pub fn builtin(name: &str) -> Result<GateDef> {
    match name.to_ascii_uppercase().as_str() {
        "NOT" => Ok(not_gate()),
        "CNOT" => Ok(cnot_gate()),
        "TOFFOLI" => Ok(toffoli_gate()),
        "FREDKIN" => Ok(fredkin_gate()),
        "TSG" => Ok(tsg_gate()),
        "PRG" => Ok(prg_gate()),
        _ => Err(Error::UnknownGate(name.to_string())),
    }
}

fn not_gate() -> GateDef {
    let table = TruthTable::from_fn(1, 1, |x| x ^ 1).expect("static definition");
    GateDef::new("NOT", table, None, Provenance::Builtin).expect("bijective")
}

/// Feynman gate: P = A, Q = A xor B. Input A is the high bit.
fn cnot_gate() -> GateDef {
    let table = TruthTable::from_fn(2, 2, |x| {
        let (a, b) = ((x >> 1) & 1, x & 1);
        (a << 1) | (a ^ b)
    })
    .expect("static definition");
    GateDef::new("CNOT", table, None, Provenance::Builtin).expect("bijective")
}

/// P = A, Q = B, R = AB xor C.
fn toffoli_gate() -> GateDef {
    let table = TruthTable::from_fn(3, 3, |x| {
        let (a, b, c) = ((x >> 2) & 1, (x >> 1) & 1, x & 1);
        (a << 2) | (b << 1) | ((a & b) ^ c)
    })
    .expect("static definition");
    GateDef::new("TOFFOLI", table, None, Provenance::Builtin).expect("bijective")
}

/// Controlled swap: when A is set, B and C trade places.
fn fredkin_gate() -> GateDef {
    let table = TruthTable::from_fn(3, 3, |x| {
        let (a, b, c) = ((x >> 2) & 1, (x >> 1) & 1, x & 1);
        if a == 1 {
            (a << 2) | (c << 1) | b
        } else {
            x
        }
    })
    .expect("static definition");
    GateDef::new("FREDKIN", table, None, Provenance::Builtin).expect("bijective")
}

/// P = A, Q = A'C' xor B', R = (A'C' xor B') xor D,
/// S = (A'C' xor B')D xor (AB xor C).
///
/// With C held at 0 this reduces to Q = A xor B, R = A xor B xor D,
/// S = (A xor B)D xor AB: outputs R and S are a full adder's sum and
/// carry for operands A, B and carry-in D.
fn tsg_gate() -> GateDef {
    let table = TruthTable::from_fn(4, 4, |x| {
        let (a, b, c, d) = ((x >> 3) & 1, (x >> 2) & 1, (x >> 1) & 1, x & 1);
        let t = ((a ^ 1) & (c ^ 1)) ^ (b ^ 1);
        let p = a;
        let q = t;
        let r = t ^ d;
        let s = (t & d) ^ ((a & b) ^ c);
        (p << 3) | (q << 2) | (r << 1) | s
    })
    .expect("static definition");
    GateDef::new("TSG", table, None, Provenance::Builtin)
        .expect("bijective")
        .with_description(
            "Fully reversible 4-bit gate. With input C held at 0, output R is the \
             full-adder sum A xor B xor D and output S is the carry AB xor (A xor B)D.",
        )
}

/// P, Q, R output columns of the PRG gate, indexed by the 4-bit input
/// A B C D. The S column is the complement of input D on every row.
const PRG_PQR: [u32; 16] = [
    0b001, 0b010, 0b010, 0b011, 0b011, 0b100, 0b100, 0b101, 0b101, 0b110, // inputs 0..9
    0b101, 0b001, 0b111, 0b000, 0b100, 0b010, // inputs 10..15
];

/// The BCD-to-excess-3 gate: on inputs 0..9 the output is the input plus
/// three. Outside that domain the mapping repeats output words, so the
/// gate is declared partially reversible on `{0..9}` only.
fn prg_gate() -> GateDef {
    let table = TruthTable::from_fn(4, 4, |x| {
        let s = (x & 1) ^ 1;
        (PRG_PQR[x as usize] << 1) | s
    })
    .expect("static definition");
    GateDef::new("PRG", table, Some(InputDomain::bcd()), Provenance::Builtin)
        .expect("injective on BCD inputs")
        .with_description(
            "BCD-to-excess-3 gate: injective on inputs 0..9, where the output is the \
             input plus three. Output S is the complement of input D on every row.",
        )
}

/// Registry of named gates.
///
/// Built-ins are registered at construction; user gates are added with
/// [`GateRegistry::register`]. Registered definitions are immutable and
/// handed out behind `Arc`, safe for concurrent readers. Registering a
/// name twice fails deterministically: the first registration wins.
pub struct GateRegistry {
    gates: RwLock<HashMap<String, Arc<GateDef>>>,
}

impl GateRegistry {
    /// A registry holding the six built-in gates.
    pub fn with_builtins() -> Self {
        let registry = GateRegistry {
            gates: RwLock::new(HashMap::new()),
        };
        for name in BUILTIN_GATE_NAMES {
            registry
                .register(builtin(name).expect("builtin"))
                .expect("builtin names are distinct");
        }
        registry
    }

    pub fn empty() -> Self {
        GateRegistry {
            gates: RwLock::new(HashMap::new()),
        }
    }

    /// Register a gate under its own name (case-insensitive key).
    pub fn register(&self, gate: GateDef) -> Result<Arc<GateDef>> {
        let key = gate.name().to_ascii_uppercase();
        let mut gates = self.gates.write().expect("registry lock");
        if gates.contains_key(&key) {
            return Err(Error::DuplicateGate(gate.name().to_string()));
        }
        let gate = Arc::new(gate);
        gates.insert(key, Arc::clone(&gate));
        Ok(gate)
    }

    pub fn get(&self, name: &str) -> Option<Arc<GateDef>> {
        self.gates
            .read()
            .expect("registry lock")
            .get(&name.to_ascii_uppercase())
            .cloned()
    }

    /// Registered gate names, sorted.
    pub fn names(&self) -> Vec<String> {
        let mut names: Vec<String> = self
            .gates
            .read()
            .expect("registry lock")
            .values()
            .map(|g| g.name().to_string())
            .collect();
        names.sort();
        names
    }
}

impl Default for GateRegistry {
    fn default() -> Self {
        GateRegistry::with_builtins()
    }
}
