//! Fanout-free acyclic gate netlists.
//!
//! A [`Netlist`] is a cascade of gate instances over named wires. Every
//! wire has exactly one driver (a primary input, a constant, or one gate
//! output pin) and at most one consumer; signal duplication needs an
//! explicit copy gate. Gate outputs that reach the circuit boundary
//! without being designated primary outputs are garbage outputs -- that
//! single structural rule is what the cost metrics count, with no
//! special cases.
//!
//! Construction goes through [`NetlistBuilder`] (or the netlist file
//! loader); both validate all structural invariants and order instances
//! topologically before a `Netlist` value exists. Frozen netlists are
//! immutable and safe to simulate concurrently.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result, MAX_WIDTH};
use crate::gate::{builtin, GateDef};
use crate::table::TruthTable;
use crate::word::BitWord;

/// Index of a wire inside one netlist. Wire-id order is creation order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WireId(usize);

impl WireId {
    pub fn index(&self) -> usize {
        self.0
    }
}

/// What drives a wire.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Driver {
    PrimaryInput,
    Constant(bool),
    /// Output pin `pin` of `instances[instance]`.
    Gate { instance: usize, pin: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wire {
    pub name: String,
    pub driver: Driver,
}

/// One placement of a gate over netlist wires. Pin order follows the
/// gate's table bit order: `inputs[0]` is the most significant input
/// bit, `outputs[0]` the most significant output bit.
#[derive(Debug, Clone)]
pub struct GateInstance {
    pub gate: Arc<GateDef>,
    pub inputs: Vec<WireId>,
    pub outputs: Vec<WireId>,
}

impl PartialEq for GateInstance {
    fn eq(&self, other: &Self) -> bool {
        *self.gate == *other.gate && self.inputs == other.inputs && self.outputs == other.outputs
    }
}

impl Eq for GateInstance {}

/// Structural rule broken by a netlist, named per offending wire or
/// instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Fanout { wire: String, consumers: usize },
    Cycle,
    MultipleDrivers { wire: String },
    Undriven { wire: String },
    BoundaryConsumed { wire: String },
    Dangling { wire: String },
    GarbageNotGateOutput { wire: String },
    GarbageMismatch { declared: Vec<String>, derived: Vec<String> },
    DuplicateBoundary { wire: String },
    PinCount {
        instance: usize,
        gate: String,
        role: &'static str,
        expected: usize,
        actual: usize,
    },
    InputListMismatch { wire: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Fanout { wire, consumers } => {
                write!(f, "fanout: wire '{wire}' has {consumers} consumers")
            }
            Violation::Cycle => write!(f, "cycle: gate instances admit no topological order"),
            Violation::MultipleDrivers { wire } => {
                write!(f, "wire '{wire}' has more than one driver")
            }
            Violation::Undriven { wire } => write!(f, "wire '{wire}' has no driver"),
            Violation::BoundaryConsumed { wire } => {
                write!(f, "boundary wire '{wire}' also feeds a gate")
            }
            Violation::Dangling { wire } => {
                write!(f, "wire '{wire}' has no consumer and is not an output")
            }
            Violation::GarbageNotGateOutput { wire } => {
                write!(f, "garbage wire '{wire}' is not a gate output")
            }
            Violation::GarbageMismatch { declared, derived } => write!(
                f,
                "declared garbage [{}] differs from derived [{}]",
                declared.join(", "),
                derived.join(", ")
            ),
            Violation::DuplicateBoundary { wire } => {
                write!(f, "wire '{wire}' appears more than once among outputs")
            }
            Violation::PinCount {
                instance,
                gate,
                role,
                expected,
                actual,
            } => write!(
                f,
                "instance {instance} ({gate}): expected {expected} {role} pin(s), got {actual}"
            ),
            Violation::InputListMismatch { wire } => {
                write!(f, "primary input list does not match input wire '{wire}'")
            }
        }
    }
}

/// How a wire is declared before drivers are resolved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum ProtoKind {
    Input,
    Constant(bool),
    GateOutput,
}

/// A frozen, validated, fanout-free acyclic circuit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Netlist {
    name: String,
    wires: Vec<Wire>,
    /// Topologically ordered; assembly normalizes the order.
    instances: Vec<GateInstance>,
    primary_inputs: Vec<WireId>,
    primary_outputs: Vec<WireId>,
    /// Gate-driven boundary wires not designated primary, in wire-id
    /// order. Derived structurally at assembly.
    garbage: Vec<WireId>,
}

impl Netlist {
    /// Validate and freeze a netlist from raw parts. `declared_garbage`
    /// (from a file) is cross-checked against the derived garbage set.
    pub(crate) fn assemble(
        name: String,
        proto: Vec<(String, ProtoKind)>,
        instances: Vec<GateInstance>,
        primary_inputs: Vec<WireId>,
        primary_outputs: Vec<WireId>,
        declared_garbage: Option<Vec<WireId>>,
    ) -> std::result::Result<Netlist, Vec<Violation>> {
        let mut violations = Vec::new();
        let wire_name = |w: WireId| proto[w.0].0.clone();

        // Pin counts.
        for (i, inst) in instances.iter().enumerate() {
            if inst.inputs.len() != inst.gate.in_width() as usize {
                violations.push(Violation::PinCount {
                    instance: i,
                    gate: inst.gate.name().to_string(),
                    role: "input",
                    expected: inst.gate.in_width() as usize,
                    actual: inst.inputs.len(),
                });
            }
            if inst.outputs.len() != inst.gate.out_width() as usize {
                violations.push(Violation::PinCount {
                    instance: i,
                    gate: inst.gate.name().to_string(),
                    role: "output",
                    expected: inst.gate.out_width() as usize,
                    actual: inst.outputs.len(),
                });
            }
        }

        // Resolve drivers.
        let mut driver: Vec<Option<Driver>> = proto
            .iter()
            .map(|(_, kind)| match kind {
                ProtoKind::Input => Some(Driver::PrimaryInput),
                ProtoKind::Constant(b) => Some(Driver::Constant(*b)),
                ProtoKind::GateOutput => None,
            })
            .collect();
        for (i, inst) in instances.iter().enumerate() {
            for (pin, &w) in inst.outputs.iter().enumerate() {
                if driver[w.0].is_some() {
                    violations.push(Violation::MultipleDrivers { wire: wire_name(w) });
                } else {
                    driver[w.0] = Some(Driver::Gate { instance: i, pin });
                }
            }
        }
        for (i, d) in driver.iter().enumerate() {
            if d.is_none() {
                violations.push(Violation::Undriven {
                    wire: proto[i].0.clone(),
                });
            }
        }

        // Fanout-free: at most one consumer per wire.
        let mut consumers = vec![0usize; proto.len()];
        for inst in &instances {
            for &w in &inst.inputs {
                consumers[w.0] += 1;
            }
        }
        for (i, &count) in consumers.iter().enumerate() {
            if count > 1 {
                violations.push(Violation::Fanout {
                    wire: proto[i].0.clone(),
                    consumers: count,
                });
            }
        }

        // Boundary lists.
        let mut boundary_seen = vec![false; proto.len()];
        for &w in primary_outputs
            .iter()
            .chain(declared_garbage.iter().flatten())
        {
            if boundary_seen[w.0] {
                violations.push(Violation::DuplicateBoundary { wire: wire_name(w) });
            }
            boundary_seen[w.0] = true;
            if consumers[w.0] > 0 {
                violations.push(Violation::BoundaryConsumed { wire: wire_name(w) });
            }
        }
        for &w in declared_garbage.iter().flatten() {
            if proto[w.0].1 != ProtoKind::GateOutput {
                violations.push(Violation::GarbageNotGateOutput { wire: wire_name(w) });
            }
        }

        // The primary input list must cover exactly the input wires.
        let mut listed = vec![false; proto.len()];
        for &w in &primary_inputs {
            if proto[w.0].1 != ProtoKind::Input || listed[w.0] {
                violations.push(Violation::InputListMismatch { wire: wire_name(w) });
            }
            listed[w.0] = true;
        }
        for (i, (name, kind)) in proto.iter().enumerate() {
            if *kind == ProtoKind::Input && !listed[i] {
                violations.push(Violation::InputListMismatch { wire: name.clone() });
            }
        }

        let mut is_primary_output = vec![false; proto.len()];
        for &w in &primary_outputs {
            is_primary_output[w.0] = true;
        }

        // Garbage rule: gate-driven, unconsumed, not primary.
        let derived_garbage: Vec<WireId> = (0..proto.len())
            .filter(|&i| {
                proto[i].1 == ProtoKind::GateOutput && consumers[i] == 0 && !is_primary_output[i]
            })
            .map(WireId)
            .collect();
        if let Some(declared) = &declared_garbage {
            let mut declared_sorted: Vec<WireId> = declared.clone();
            declared_sorted.sort_unstable();
            declared_sorted.dedup();
            if declared_sorted != derived_garbage {
                violations.push(Violation::GarbageMismatch {
                    declared: declared.iter().map(|&w| wire_name(w)).collect(),
                    derived: derived_garbage.iter().map(|&w| wire_name(w)).collect(),
                });
            }
        }

        // Inputs and constants must go somewhere.
        for (i, (name, kind)) in proto.iter().enumerate() {
            let source = matches!(kind, ProtoKind::Input | ProtoKind::Constant(_));
            if source && consumers[i] == 0 && !is_primary_output[i] {
                violations.push(Violation::Dangling { wire: name.clone() });
            }
        }

        // Topological order over instances (Kahn, stable by original
        // index so assembly is deterministic).
        let mut indegree = vec![0usize; instances.len()];
        let mut dependents: Vec<Vec<usize>> = vec![Vec::new(); instances.len()];
        for (i, inst) in instances.iter().enumerate() {
            for &w in &inst.inputs {
                if let Some(Driver::Gate { instance, .. }) = driver[w.0] {
                    indegree[i] += 1;
                    dependents[instance].push(i);
                }
            }
        }
        let mut ready: Vec<usize> = (0..instances.len()).filter(|&i| indegree[i] == 0).collect();
        let mut order = Vec::with_capacity(instances.len());
        while let Some(&next) = ready.iter().min() {
            ready.retain(|&i| i != next);
            order.push(next);
            for &dep in &dependents[next] {
                indegree[dep] -= 1;
                if indegree[dep] == 0 {
                    ready.push(dep);
                }
            }
        }
        if order.len() < instances.len() {
            violations.push(Violation::Cycle);
        }

        if !violations.is_empty() {
            return Err(violations);
        }

        // Normalize: permute instances into topological order and point
        // wire drivers at the new positions.
        let mut new_position = vec![0usize; instances.len()];
        for (new, &old) in order.iter().enumerate() {
            new_position[old] = new;
        }
        let mut sorted_instances: Vec<GateInstance> = order
            .iter()
            .map(|&old| instances[old].clone())
            .collect();
        let wires: Vec<Wire> = proto
            .into_iter()
            .zip(driver)
            .map(|((name, _), d)| {
                let driver = match d.expect("all wires driven") {
                    Driver::Gate { instance, pin } => Driver::Gate {
                        instance: new_position[instance],
                        pin,
                    },
                    other => other,
                };
                Wire { name, driver }
            })
            .collect();
        sorted_instances.shrink_to_fit();

        Ok(Netlist {
            name,
            wires,
            instances: sorted_instances,
            primary_inputs,
            primary_outputs,
            garbage: derived_garbage,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn wires(&self) -> &[Wire] {
        &self.wires
    }

    pub fn wire_name(&self, id: WireId) -> &str {
        &self.wires[id.0].name
    }

    pub fn instances(&self) -> &[GateInstance] {
        &self.instances
    }

    pub fn primary_inputs(&self) -> &[WireId] {
        &self.primary_inputs
    }

    pub fn primary_outputs(&self) -> &[WireId] {
        &self.primary_outputs
    }

    /// Garbage outputs in wire-id order.
    pub fn garbage(&self) -> &[WireId] {
        &self.garbage
    }

    pub fn constant_count(&self) -> usize {
        self.wires
            .iter()
            .filter(|w| matches!(w.driver, Driver::Constant(_)))
            .count()
    }

    /// Re-check every structural invariant. Empty result means the
    /// netlist is well-formed; netlists built by this crate always are.
    pub fn validate(&self) -> Vec<Violation> {
        let proto: Vec<(String, ProtoKind)> = self
            .wires
            .iter()
            .map(|w| {
                let kind = match w.driver {
                    Driver::PrimaryInput => ProtoKind::Input,
                    Driver::Constant(b) => ProtoKind::Constant(b),
                    Driver::Gate { .. } => ProtoKind::GateOutput,
                };
                (w.name.clone(), kind)
            })
            .collect();
        match Netlist::assemble(
            self.name.clone(),
            proto,
            self.instances.clone(),
            self.primary_inputs.clone(),
            self.primary_outputs.clone(),
            Some(self.garbage.clone()),
        ) {
            Ok(_) => Vec::new(),
            Err(violations) => violations,
        }
    }

    /// Evaluate the circuit on one input word.
    ///
    /// Input bit order matches the primary input list, most significant
    /// first; likewise for the primary output word. The garbage word
    /// collects garbage wires in wire-id order, most significant first,
    /// and is empty for garbage-free circuits.
    pub fn simulate(&self, input: BitWord) -> Result<(BitWord, BitWord)> {
        if input.width() as usize != self.primary_inputs.len() {
            return Err(Error::WidthMismatch {
                expected: self.primary_inputs.len() as u32,
                actual: input.width(),
            });
        }
        let mut values = vec![false; self.wires.len()];
        self.eval(input.value(), &mut values);
        let primary = self.collect_word(&values, &self.primary_outputs)?;
        let garbage = self.collect_word(&values, &self.garbage)?;
        Ok((primary, garbage))
    }

    fn eval(&self, input: u32, values: &mut [bool]) {
        let n = self.primary_inputs.len();
        for (k, &w) in self.primary_inputs.iter().enumerate() {
            values[w.0] = (input >> (n - 1 - k)) & 1 == 1;
        }
        for wire in &self.wires {
            if let Driver::Constant(b) = wire.driver {
                if let Some(id) = self.wires.iter().position(|w| std::ptr::eq(w, wire)) {
                    values[id] = b;
                }
            }
        }
        for inst in &self.instances {
            let mut x = 0u32;
            for &w in &inst.inputs {
                x = (x << 1) | values[w.0] as u32;
            }
            let y = inst.gate.table()[x];
            let m = inst.outputs.len();
            for (pin, &w) in inst.outputs.iter().enumerate() {
                values[w.0] = (y >> (m - 1 - pin)) & 1 == 1;
            }
        }
    }

    fn collect_word(&self, values: &[bool], wires: &[WireId]) -> Result<BitWord> {
        if wires.len() as u32 > MAX_WIDTH {
            return Err(Error::WidthOutOfRange {
                width: wires.len() as u32,
            });
        }
        let mut value = 0u32;
        for &w in wires {
            value = (value << 1) | values[w.0] as u32;
        }
        BitWord::new(value, wires.len() as u32)
    }

    /// Exhaustively extract the primary-input to primary-output table.
    pub fn to_truth_table(&self) -> Result<TruthTable> {
        let n = self.primary_inputs.len() as u32;
        let m = self.primary_outputs.len() as u32;
        if n == 0 || n > MAX_WIDTH {
            return Err(Error::WidthOutOfRange { width: n });
        }
        if m == 0 || m > MAX_WIDTH {
            return Err(Error::WidthOutOfRange { width: m });
        }
        let mut values = vec![false; self.wires.len()];
        let mut rows = Vec::with_capacity(1 << n);
        for x in 0..1u32 << n {
            self.eval(x, &mut values);
            let mut y = 0u32;
            for &w in &self.primary_outputs {
                y = (y << 1) | values[w.0] as u32;
            }
            rows.push(y);
        }
        TruthTable::from_rows(n, m, rows)
    }

    /// Longest input-to-output path, counted in gate instances; 0 for a
    /// passthrough.
    pub fn depth(&self) -> usize {
        let mut wire_level = vec![0usize; self.wires.len()];
        let mut max = 0;
        for inst in &self.instances {
            let level = 1 + inst
                .inputs
                .iter()
                .map(|w| wire_level[w.0])
                .max()
                .unwrap_or(0);
            for &w in &inst.outputs {
                wire_level[w.0] = level;
            }
            max = max.max(level);
        }
        max
    }
}

/// Incremental netlist construction; [`NetlistBuilder::finish`] runs the
/// full validation and freezes the result.
pub struct NetlistBuilder {
    name: String,
    wires: Vec<(String, ProtoKind)>,
    by_name: HashMap<String, WireId>,
    instances: Vec<GateInstance>,
    primary_inputs: Vec<WireId>,
    primary_outputs: Vec<WireId>,
}

impl NetlistBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        NetlistBuilder {
            name: name.into(),
            wires: Vec::new(),
            by_name: HashMap::new(),
            instances: Vec::new(),
            primary_inputs: Vec::new(),
            primary_outputs: Vec::new(),
        }
    }

    fn add_wire(&mut self, name: &str, kind: ProtoKind) -> Result<WireId> {
        if self.by_name.contains_key(name) {
            return Err(Error::DuplicateWire(name.to_string()));
        }
        let id = WireId(self.wires.len());
        self.wires.push((name.to_string(), kind));
        self.by_name.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn primary_input(&mut self, name: &str) -> Result<WireId> {
        let id = self.add_wire(name, ProtoKind::Input)?;
        self.primary_inputs.push(id);
        Ok(id)
    }

    pub fn constant(&mut self, name: &str, bit: bool) -> Result<WireId> {
        self.add_wire(name, ProtoKind::Constant(bit))
    }

    /// Place a gate instance; returns the freshly created output wires,
    /// one per output pin, most significant first.
    pub fn gate(
        &mut self,
        gate: Arc<GateDef>,
        inputs: &[WireId],
        output_names: &[&str],
    ) -> Result<Vec<WireId>> {
        if inputs.len() != gate.in_width() as usize {
            return Err(Error::PinCount {
                gate: gate.name().to_string(),
                role: "input",
                expected: gate.in_width() as usize,
                actual: inputs.len(),
            });
        }
        if output_names.len() != gate.out_width() as usize {
            return Err(Error::PinCount {
                gate: gate.name().to_string(),
                role: "output",
                expected: gate.out_width() as usize,
                actual: output_names.len(),
            });
        }
        for &w in inputs {
            assert!(w.0 < self.wires.len(), "foreign wire id");
        }
        let outputs: Vec<WireId> = output_names
            .iter()
            .map(|n| self.add_wire(n, ProtoKind::GateOutput))
            .collect::<Result<_>>()?;
        self.instances.push(GateInstance {
            gate,
            inputs: inputs.to_vec(),
            outputs: outputs.clone(),
        });
        Ok(outputs)
    }

    /// Declare the primary outputs, in word order (most significant
    /// first).
    pub fn primary_outputs(&mut self, wires: &[WireId]) -> &mut Self {
        self.primary_outputs = wires.to_vec();
        self
    }

    pub fn finish(self) -> Result<Netlist> {
        Netlist::assemble(
            self.name,
            self.wires,
            self.instances,
            self.primary_inputs,
            self.primary_outputs,
            None,
        )
        .map_err(Error::InvalidNetlist)
    }
}

/// The single-gate BCD-to-excess-3 converter: one PRG instance, four
/// primary inputs and outputs, no constants, no garbage.
pub fn build_prg_converter() -> Netlist {
    let prg = Arc::new(builtin("PRG").expect("builtin"));
    let mut b = NetlistBuilder::new("prg-converter");
    let inputs: Vec<WireId> = ["b3", "b2", "b1", "b0"]
        .iter()
        .map(|n| b.primary_input(n).expect("fresh wire"))
        .collect();
    let outputs = b
        .gate(prg, &inputs, &["e3", "e2", "e1", "e0"])
        .expect("pin counts match");
    b.primary_outputs(&outputs);
    b.finish().expect("reference circuit is well-formed")
}

/// A four-stage TSG ripple adder computing `input + addend` over 4 bits.
///
/// Each stage pins TSG's C input to constant 0 so that R is the sum bit
/// and S the carry: stage `i` takes (A = input bit i, B = addend bit i,
/// D = carry-in). The stage-0 carry-in is a constant 0 and the final
/// carry-out leaves as garbage, as do every stage's P and Q outputs:
/// 9 constants and 9 garbage outputs in all. The default addend 0011
/// makes the circuit a BCD-to-excess-3 converter.
pub fn build_tsg_ripple_adder(addend: BitWord) -> Result<Netlist> {
    if addend.width() != 4 {
        return Err(Error::WidthMismatch {
            expected: 4,
            actual: addend.width(),
        });
    }
    let tsg = Arc::new(builtin("TSG")?);
    let mut b = NetlistBuilder::new("tsg-adder");
    let inputs: Vec<WireId> = ["b3", "b2", "b1", "b0"]
        .iter()
        .map(|n| b.primary_input(n).expect("fresh wire"))
        .collect();
    let mut carry = b.constant("cin", false)?;
    let mut sums = Vec::with_capacity(4);
    for i in 0..4u32 {
        let k = b.constant(&format!("k{i}"), addend.bit(i))?;
        let z = b.constant(&format!("z{i}"), false)?;
        let names = [
            format!("p{i}"),
            format!("q{i}"),
            format!("s{i}"),
            format!("c{}", i + 1),
        ];
        let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let outs = b.gate(
            Arc::clone(&tsg),
            &[inputs[3 - i as usize], k, z, carry],
            &name_refs,
        )?;
        sums.push(outs[2]);
        carry = outs[3];
    }
    b.primary_outputs(&[sums[3], sums[2], sums[1], sums[0]]);
    b.finish()
}

#[cfg(test)]
mod tests {
    use rand::rngs::StdRng;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};

    use crate::domain::InputDomain;
    use crate::gate::BUILTIN_GATE_NAMES;

    use super::*;

    fn excess3_adder() -> Netlist {
        build_tsg_ripple_adder(BitWord::new(0b0011, 4).unwrap()).unwrap()
    }

    fn passthrough(width: usize) -> Netlist {
        let mut b = NetlistBuilder::new("passthrough");
        let wires: Vec<WireId> = (0..width)
            .map(|k| b.primary_input(&format!("x{k}")).unwrap())
            .collect();
        b.primary_outputs(&wires);
        b.finish().unwrap()
    }

    #[test]
    fn reference_circuits_validate() {
        assert!(build_prg_converter().validate().is_empty());
        assert!(excess3_adder().validate().is_empty());
    }

    #[test]
    fn prg_converter_shape() {
        let n = build_prg_converter();
        assert_eq!(n.instances().len(), 1);
        assert_eq!(n.primary_inputs().len(), 4);
        assert_eq!(n.primary_outputs().len(), 4);
        assert_eq!(n.constant_count(), 0);
        assert!(n.garbage().is_empty());
        assert_eq!(n.depth(), 1);
    }

    #[test]
    fn tsg_adder_shape() {
        let n = excess3_adder();
        assert_eq!(n.instances().len(), 4);
        assert_eq!(n.constant_count(), 9);
        assert_eq!(n.garbage().len(), 9);
        assert_eq!(n.depth(), 4);
        // Garbage in wire-id order: stage P/Q pairs then the final carry.
        let names: Vec<&str> = n.garbage().iter().map(|&w| n.wire_name(w)).collect();
        assert_eq!(
            names,
            ["p0", "q0", "p1", "q1", "p2", "q2", "p3", "q3", "c4"]
        );
    }

    #[test]
    fn prg_converter_simulation() {
        let n = build_prg_converter();
        let (primary, garbage) = n.simulate(BitWord::new(0b0111, 4).unwrap()).unwrap();
        assert_eq!(primary.value(), 0b1010);
        assert!(garbage.is_empty());
        let (primary, _) = n.simulate(BitWord::new(0b1001, 4).unwrap()).unwrap();
        assert_eq!(primary.value(), 0b1100);
    }

    #[test]
    fn tsg_adder_simulation_matches_integer_oracle() {
        let n = excess3_adder();
        for x in 0..16u32 {
            let (primary, _) = n.simulate(BitWord::new(x, 4).unwrap()).unwrap();
            assert_eq!(primary.value(), (x + 3) % 16, "input {x}");
        }
        let (p, _) = n.simulate(BitWord::new(0b0111, 4).unwrap()).unwrap();
        assert_eq!(p.value(), 0b1010);
        let (p, _) = n.simulate(BitWord::new(0b0000, 4).unwrap()).unwrap();
        assert_eq!(p.value(), 0b0011);
    }

    #[test]
    fn simulate_rejects_wrong_input_width() {
        let n = build_prg_converter();
        assert!(matches!(
            n.simulate(BitWord::new(0, 3).unwrap()),
            Err(Error::WidthMismatch {
                expected: 4,
                actual: 3
            })
        ));
    }

    #[test]
    fn prg_netlist_table_equals_gate_table() {
        let n = build_prg_converter();
        let table = n.to_truth_table().unwrap();
        assert_eq!(&table, builtin("PRG").unwrap().table());
    }

    #[test]
    fn adder_equals_converter_on_bcd() {
        let adder = excess3_adder().to_truth_table().unwrap();
        let converter = build_prg_converter().to_truth_table().unwrap();
        assert!(adder.equal_on(&converter, &InputDomain::bcd()).unwrap());
        // And they disagree somewhere outside it.
        assert!(!adder
            .equal_on(&converter, &InputDomain::full(4).unwrap())
            .unwrap());
    }

    #[test]
    fn simulate_agrees_with_extracted_table() {
        let n = excess3_adder();
        let table = n.to_truth_table().unwrap();
        for x in 0..16u32 {
            let (primary, _) = n.simulate(BitWord::new(x, 4).unwrap()).unwrap();
            assert_eq!(primary.value(), table[x]);
        }
    }

    #[test]
    fn passthrough_is_identity() {
        let n = passthrough(3);
        assert!(n.validate().is_empty());
        assert_eq!(n.depth(), 0);
        assert_eq!(n.to_truth_table().unwrap(), TruthTable::identity(3).unwrap());
    }

    #[test]
    fn fanout_is_a_violation() {
        // One input wire feeding two NOT gates.
        let not = Arc::new(builtin("NOT").unwrap());
        let mut b = NetlistBuilder::new("bad");
        let x = b.primary_input("x").unwrap();
        let o1 = b.gate(Arc::clone(&not), &[x], &["y1"]).unwrap();
        let o2 = b.gate(not, &[x], &["y2"]).unwrap();
        b.primary_outputs(&[o1[0], o2[0]]);
        match b.finish() {
            Err(Error::InvalidNetlist(violations)) => {
                assert!(violations
                    .iter()
                    .any(|v| matches!(v, Violation::Fanout { wire, consumers: 2 } if wire == "x")));
            }
            other => panic!("expected fanout violation, got {other:?}"),
        }
    }

    #[test]
    fn cycle_is_a_violation() {
        // Two CNOTs each consuming the other's output.
        let cnot = Arc::new(builtin("CNOT").unwrap());
        let proto = vec![
            ("a".to_string(), ProtoKind::Input),
            ("b".to_string(), ProtoKind::Input),
            ("u".to_string(), ProtoKind::GateOutput),
            ("v".to_string(), ProtoKind::GateOutput),
            ("w".to_string(), ProtoKind::GateOutput),
            ("x".to_string(), ProtoKind::GateOutput),
        ];
        let instances = vec![
            GateInstance {
                gate: Arc::clone(&cnot),
                inputs: vec![WireId(0), WireId(4)],
                outputs: vec![WireId(2), WireId(3)],
            },
            GateInstance {
                gate: cnot,
                inputs: vec![WireId(1), WireId(2)],
                outputs: vec![WireId(4), WireId(5)],
            },
        ];
        let result = Netlist::assemble(
            "cyclic".to_string(),
            proto,
            instances,
            vec![WireId(0), WireId(1)],
            vec![WireId(3), WireId(5)],
            None,
        );
        match result {
            Err(violations) => assert!(violations.contains(&Violation::Cycle)),
            Ok(_) => panic!("cycle accepted"),
        }
    }

    #[test]
    fn dangling_constant_is_a_violation() {
        let mut b = NetlistBuilder::new("bad");
        let x = b.primary_input("x").unwrap();
        b.constant("unused", true).unwrap();
        b.primary_outputs(&[x]);
        match b.finish() {
            Err(Error::InvalidNetlist(violations)) => {
                assert!(violations
                    .iter()
                    .any(|v| matches!(v, Violation::Dangling { wire } if wire == "unused")));
            }
            other => panic!("expected dangling violation, got {other:?}"),
        }
    }

    #[test]
    fn instance_order_is_normalized_topologically() {
        // Two independent NOT stages presented in both orders produce
        // the same depth and the same extracted table.
        let not = Arc::new(builtin("NOT").unwrap());
        let build = |swap: bool| {
            let proto = vec![
                ("a".to_string(), ProtoKind::Input),
                ("b".to_string(), ProtoKind::Input),
                ("u".to_string(), ProtoKind::GateOutput),
                ("v".to_string(), ProtoKind::GateOutput),
            ];
            let first = GateInstance {
                gate: Arc::clone(&not),
                inputs: vec![WireId(0)],
                outputs: vec![WireId(2)],
            };
            let second = GateInstance {
                gate: Arc::clone(&not),
                inputs: vec![WireId(1)],
                outputs: vec![WireId(3)],
            };
            let instances = if swap {
                vec![second.clone(), first.clone()]
            } else {
                vec![first, second]
            };
            Netlist::assemble(
                "pair".to_string(),
                proto,
                instances,
                vec![WireId(0), WireId(1)],
                vec![WireId(2), WireId(3)],
                None,
            )
            .unwrap()
        };
        let a = build(false);
        let b = build(true);
        assert_eq!(a.depth(), b.depth());
        assert_eq!(a.to_truth_table().unwrap(), b.to_truth_table().unwrap());
    }

    #[test]
    fn random_reversible_cascades_compute_bijections() {
        // Zero constants and zero garbage over bijective gates must give
        // a bijection end to end.
        let mut rng = StdRng::seed_from_u64(7);
        let pool: Vec<Arc<GateDef>> = BUILTIN_GATE_NAMES
            .iter()
            .filter(|n| **n != "PRG" && **n != "TSG")
            .map(|n| Arc::new(builtin(n).unwrap()))
            .collect();
        for trial in 0..40 {
            let width = rng.random_range(2..=5usize);
            let mut b = NetlistBuilder::new(format!("cascade{trial}"));
            let mut live: Vec<WireId> = (0..width)
                .map(|k| b.primary_input(&format!("x{k}")).unwrap())
                .collect();
            for g in 0..rng.random_range(1..=8usize) {
                let gate = Arc::clone(&pool[rng.random_range(0..pool.len())]);
                let arity = gate.in_width() as usize;
                if arity > width {
                    continue;
                }
                let mut slots: Vec<usize> = (0..width).collect();
                slots.shuffle(&mut rng);
                slots.truncate(arity);
                let ins: Vec<WireId> = slots.iter().map(|&p| live[p]).collect();
                let names: Vec<String> = (0..arity).map(|p| format!("w{g}_{p}")).collect();
                let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
                let outs = b.gate(gate, &ins, &refs).unwrap();
                for (&slot, out) in slots.iter().zip(outs) {
                    live[slot] = out;
                }
            }
            b.primary_outputs(&live);
            let n = b.finish().unwrap();
            assert_eq!(n.constant_count(), 0);
            assert!(n.garbage().is_empty());
            assert!(n.to_truth_table().unwrap().is_bijective().unwrap());
        }
    }

    #[test]
    fn adder_requires_width_4_addend() {
        assert!(matches!(
            build_tsg_ripple_adder(BitWord::new(1, 3).unwrap()),
            Err(Error::WidthMismatch {
                expected: 4,
                actual: 3
            })
        ));
    }
}
