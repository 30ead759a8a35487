//! Seminormal quasi-crystals: finite carrier, weight map, partial raising
//! and lowering operators `e_i`/`f_i`, and statistics `ε_i`/`φ_i`.
//!
//! Carrier elements are opaque dense indices ([`EltId`]); operator tables are
//! arrays of optional indices, so operator application is O(1) and the whole
//! structure serializes directly. The undefined value `⊥` of the operators is
//! `Option::None`, never a sentinel index.
//!
//! A value of [`QuasiCrystal`] is immutable after construction and can be
//! shared freely across threads. Structural well-formedness (table shapes,
//! name uniqueness) is enforced by the constructors; the seminormality
//! axioms are checked separately by [`QuasiCrystal::validate_seminormal`],
//! which enumerates every violation instead of failing fast.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::extint::ExtInt;
use crate::rootsys::{RootSystem, Weight};

/// Dense identifier of a carrier element.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct EltId(pub usize);

/// One axiom violation found by the validator.
#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    /// Name of the offending element.
    pub element: String,
    /// Index `i ∈ I` at which the violation occurs.
    pub index: usize,
    /// Axiom number (1–6) in the definition of a seminormal quasi-crystal.
    pub condition: u8,
    pub detail: String,
}

/// Exhaustive list of axiom violations; empty means valid.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has_condition(&self, condition: u8) -> bool {
        self.violations.iter().any(|v| v.condition == condition)
    }

    fn push(&mut self, element: &str, index: usize, condition: u8, detail: String) {
        self.violations.push(Violation {
            element: element.to_string(),
            index,
            condition,
            detail,
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "no violations");
        }
        for (k, v) in self.violations.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(
                f,
                "condition {} at (element {}, index {}): {}",
                v.condition, v.element, v.index, v.detail
            )?;
        }
        Ok(())
    }
}

/// A seminormal quasi-crystal over a fixed root system.
#[derive(Clone, Debug)]
pub struct QuasiCrystal {
    label: String,
    sys: RootSystem,
    names: Vec<String>,
    name_to_id: HashMap<String, usize>,
    weights: Vec<Weight>,
    // all per-index tables are aligned with sys.index_set()
    eps: Vec<Vec<ExtInt>>,
    phi: Vec<Vec<ExtInt>>,
    e_ops: Vec<Vec<Option<usize>>>,
    f_ops: Vec<Vec<Option<usize>>>,
}

impl QuasiCrystal {
    /// Assemble a quasi-crystal from explicit tables.
    ///
    /// Checks structure only (shapes, name uniqueness, operator targets in
    /// range); the seminormality axioms are the validator's business.
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        label: impl Into<String>,
        sys: RootSystem,
        names: Vec<String>,
        weights: Vec<Weight>,
        e_ops: Vec<Vec<Option<usize>>>,
        f_ops: Vec<Vec<Option<usize>>>,
        eps: Vec<Vec<ExtInt>>,
        phi: Vec<Vec<ExtInt>>,
    ) -> Result<QuasiCrystal> {
        let n = names.len();
        let k = sys.index_set().len();
        let mut name_to_id = HashMap::with_capacity(n);
        for (id, name) in names.iter().enumerate() {
            if name.is_empty() || name.chars().any(char::is_whitespace) {
                return Err(Error::domain(format!(
                    "element name {name:?} must be nonempty and contain no whitespace"
                )));
            }
            if name_to_id.insert(name.clone(), id).is_some() {
                return Err(Error::domain(format!("duplicate element name {name:?}")));
            }
        }
        if weights.len() != n {
            return Err(Error::domain("weight table does not cover the carrier"));
        }
        for w in &weights {
            if w.dim() != sys.rank() {
                return Err(Error::Shape {
                    expected: sys.rank(),
                    got: w.dim(),
                });
            }
        }
        for table in [&e_ops, &f_ops] {
            if table.len() != k || table.iter().any(|t| t.len() != n) {
                return Err(Error::domain("operator tables do not match carrier and index set"));
            }
            for t in table {
                if t.iter().flatten().any(|&target| target >= n) {
                    return Err(Error::domain("operator target outside the carrier"));
                }
            }
        }
        for table in [&eps, &phi] {
            if table.len() != k || table.iter().any(|t| t.len() != n) {
                return Err(Error::domain("statistic tables do not match carrier and index set"));
            }
        }
        Ok(QuasiCrystal {
            label: label.into(),
            sys,
            names,
            name_to_id,
            weights,
            eps,
            phi,
            e_ops,
            f_ops,
        })
    }

    /// The standard crystal of type `A_n`: carrier `{1 < … < n}`,
    /// `wt(x) = e_x`, `f_i(i) = i+1`, `e_i(i+1) = i`.
    pub fn standard_a(n: usize) -> Result<QuasiCrystal> {
        if n < 2 {
            return Err(Error::domain(format!(
                "standard crystal A_n requires n >= 2, got {n}"
            )));
        }
        let sys = RootSystem::type_a(n)?;
        let names: Vec<String> = (1..=n).map(|x| x.to_string()).collect();
        let weights: Vec<Weight> = (1..=n).map(|x| Weight::unit(n, x)).collect();
        let k = sys.index_set().len();
        let mut e_ops = vec![vec![None; n]; k];
        let mut f_ops = vec![vec![None; n]; k];
        let mut eps = vec![vec![ExtInt::ZERO; n]; k];
        let mut phi = vec![vec![ExtInt::ZERO; n]; k];
        for i in 1..n {
            let p = i - 1; // index position of i; letter x has id x-1
            f_ops[p][i - 1] = Some(i);
            e_ops[p][i] = Some(i - 1);
            eps[p][i] = ExtInt::Finite(1);
            phi[p][i - 1] = ExtInt::Finite(1);
        }
        QuasiCrystal::from_parts(format!("A:{n}"), sys, names, weights, e_ops, f_ops, eps, phi)
    }

    /// The standard crystal of type `C_n`: carrier
    /// `{1 < … < n < n̄ < … < 1̄}` with `wt(x) = e_x`, `wt(x̄) = −e_x`;
    /// barred letters are named `-x`.
    pub fn standard_c(n: usize) -> Result<QuasiCrystal> {
        if n < 2 {
            return Err(Error::domain(format!(
                "standard crystal C_n requires n >= 2, got {n}"
            )));
        }
        let sys = RootSystem::type_c(n)?;
        let size = 2 * n;
        // id x-1 for the letter x, id 2n-x for the barred letter x̄
        let barred = |x: usize| size - x;
        let mut names = vec![String::new(); size];
        let mut weights = vec![Weight::zero(n); size];
        for x in 1..=n {
            names[x - 1] = x.to_string();
            names[barred(x)] = format!("-{x}");
            weights[x - 1] = Weight::unit(n, x);
            weights[barred(x)] = Weight::unit(n, x).neg();
        }
        let k = sys.index_set().len();
        let mut e_ops = vec![vec![None; size]; k];
        let mut f_ops = vec![vec![None; size]; k];
        let mut eps = vec![vec![ExtInt::ZERO; size]; k];
        let mut phi = vec![vec![ExtInt::ZERO; size]; k];
        for i in 1..n {
            let p = i - 1;
            f_ops[p][i - 1] = Some(i); // f_i(i) = i+1
            e_ops[p][i] = Some(i - 1); // e_i(i+1) = i
            f_ops[p][barred(i + 1)] = Some(barred(i)); // f_i(i+1̄) = ī
            e_ops[p][barred(i)] = Some(barred(i + 1)); // e_i(ī) = i+1̄
            eps[p][i] = ExtInt::Finite(1);
            eps[p][barred(i)] = ExtInt::Finite(1);
            phi[p][i - 1] = ExtInt::Finite(1);
            phi[p][barred(i + 1)] = ExtInt::Finite(1);
        }
        let p = n - 1;
        f_ops[p][n - 1] = Some(barred(n)); // f_n(n) = n̄
        e_ops[p][barred(n)] = Some(n - 1); // e_n(n̄) = n
        eps[p][barred(n)] = ExtInt::Finite(1);
        phi[p][n - 1] = ExtInt::Finite(1);
        QuasiCrystal::from_parts(format!("C:{n}"), sys, names, weights, e_ops, f_ops, eps, phi)
    }

    /// The one-element quasi-crystal of weight 0 with all statistics 0 and
    /// all operators undefined (the empty product).
    pub fn trivial(sys: RootSystem) -> QuasiCrystal {
        let k = sys.index_set().len();
        let rank = sys.rank();
        QuasiCrystal::from_parts(
            format!("trivial:{}", sys.label()),
            sys,
            vec!["ε".to_string()],
            vec![Weight::zero(rank)],
            vec![vec![None]; k],
            vec![vec![None]; k],
            vec![vec![ExtInt::ZERO]; k],
            vec![vec![ExtInt::ZERO]; k],
        )
        .expect("trivial crystal is structurally sound")
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn sys(&self) -> &RootSystem {
        &self.sys
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = EltId> + '_ {
        (0..self.names.len()).map(EltId)
    }

    pub fn name(&self, x: EltId) -> &str {
        &self.names[x.0]
    }

    pub fn element_by_name(&self, name: &str) -> Option<EltId> {
        self.name_to_id.get(name).copied().map(EltId)
    }

    pub fn weight(&self, x: EltId) -> &Weight {
        &self.weights[x.0]
    }

    /// `ε_i(x)`. Panics if `i` is not in the index set.
    pub fn eps(&self, i: usize, x: EltId) -> ExtInt {
        self.eps_pos(self.pos(i), x)
    }

    /// `φ_i(x)`. Panics if `i` is not in the index set.
    pub fn phi(&self, i: usize, x: EltId) -> ExtInt {
        self.phi_pos(self.pos(i), x)
    }

    /// `e_i(x)`, with `None` playing `⊥`. Panics if `i` is not in the index set.
    pub fn op_e(&self, i: usize, x: EltId) -> Option<EltId> {
        self.e_pos(self.pos(i), x)
    }

    /// `f_i(x)`, with `None` playing `⊥`. Panics if `i` is not in the index set.
    pub fn op_f(&self, i: usize, x: EltId) -> Option<EltId> {
        self.f_pos(self.pos(i), x)
    }

    fn pos(&self, i: usize) -> usize {
        self.sys
            .index_pos(i)
            .unwrap_or_else(|_| panic!("index {i} not in the index set of {}", self.sys))
    }

    pub(crate) fn eps_pos(&self, pos: usize, x: EltId) -> ExtInt {
        self.eps[pos][x.0]
    }

    pub(crate) fn phi_pos(&self, pos: usize, x: EltId) -> ExtInt {
        self.phi[pos][x.0]
    }

    pub(crate) fn e_pos(&self, pos: usize, x: EltId) -> Option<EltId> {
        self.e_ops[pos][x.0].map(EltId)
    }

    pub(crate) fn f_pos(&self, pos: usize, x: EltId) -> Option<EltId> {
        self.f_ops[pos][x.0].map(EltId)
    }

    /// True when no statistic takes the value `+∞`, i.e. the quasi-crystal
    /// is a seminormal crystal.
    pub fn is_crystal(&self) -> bool {
        self.eps
            .iter()
            .chain(&self.phi)
            .all(|row| row.iter().all(|v| v.is_finite()))
    }

    /// Check all six axioms of a seminormal quasi-crystal for every element
    /// and index, by exhaustive enumeration. The report lists every
    /// violation found; an empty report means the structure is valid.
    pub fn validate_seminormal(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let n = self.len();
        for (pos, &i) in self.sys.index_set().iter().enumerate() {
            let alpha = self.sys.simple_root_at(pos).clone();
            for x in self.elements() {
                let name = self.name(x);
                let eps = self.eps_pos(pos, x);
                let phi = self.phi_pos(pos, x);
                let pairing = self.sys.pairing_at(pos, self.weight(x));

                // (1) φ_i(x) = ε_i(x) + ⟨wt(x), α_i^∨⟩, with saturation
                if phi != eps + pairing {
                    report.push(
                        name,
                        i,
                        1,
                        format!("phi = {phi} but eps + <wt, coroot> = {}", eps + pairing),
                    );
                }

                // (2) wt(e_i(x)) = wt(x) + α_i
                if let Some(y) = self.e_pos(pos, x) {
                    let expected = self.weight(x).add(&alpha);
                    if self.weight(y) != &expected {
                        report.push(
                            name,
                            i,
                            2,
                            format!(
                                "wt(e({name})) = {} but wt + alpha = {expected}",
                                self.weight(y)
                            ),
                        );
                    }
                    // (4) e_i(x) = y requires f_i(y) = x
                    if self.f_pos(pos, y) != Some(x) {
                        report.push(
                            name,
                            i,
                            4,
                            format!("e({name}) = {} but f does not map it back", self.name(y)),
                        );
                    }
                }

                // (3) wt(f_i(x)) = wt(x) − α_i
                if let Some(y) = self.f_pos(pos, x) {
                    let expected = self.weight(x).sub(&alpha);
                    if self.weight(y) != &expected {
                        report.push(
                            name,
                            i,
                            3,
                            format!(
                                "wt(f({name})) = {} but wt - alpha = {expected}",
                                self.weight(y)
                            ),
                        );
                    }
                    // (4) f_i(x) = y requires e_i(y) = x
                    if self.e_pos(pos, y) != Some(x) {
                        report.push(
                            name,
                            i,
                            4,
                            format!("f({name}) = {} but e does not map it back", self.name(y)),
                        );
                    }
                }

                if eps.is_infinite() {
                    // (5) ε_i(x) = +∞ forbids both operators
                    if self.e_pos(pos, x).is_some() || self.f_pos(pos, x).is_some() {
                        report.push(
                            name,
                            i,
                            5,
                            "eps = +inf but an operator is defined".to_string(),
                        );
                    }
                } else {
                    // (6) finite statistics count the available operator steps
                    if let Some(expected) = eps.finite() {
                        match chain_len(|z| self.e_pos(pos, z), x, n) {
                            Some(steps) if steps as i64 == expected => {}
                            Some(steps) => report.push(
                                name,
                                i,
                                6,
                                format!("eps = {expected} but e applies {steps} time(s)"),
                            ),
                            None => report.push(
                                name,
                                i,
                                6,
                                "raising chain does not terminate".to_string(),
                            ),
                        }
                    }
                    if let Some(expected) = phi.finite() {
                        match chain_len(|z| self.f_pos(pos, z), x, n) {
                            Some(steps) if steps as i64 == expected => {}
                            Some(steps) => report.push(
                                name,
                                i,
                                6,
                                format!("phi = {expected} but f applies {steps} time(s)"),
                            ),
                            None => report.push(
                                name,
                                i,
                                6,
                                "lowering chain does not terminate".to_string(),
                            ),
                        }
                    }
                }
            }
        }
        report
    }

    /// Decide whether `psi` (given as the image of each element, with
    /// `⊥ ↦ ⊥` implicit) is a quasi-crystal isomorphism from `self` onto
    /// `other`: a bijection preserving weights and statistics and commuting
    /// with every defined operator.
    pub fn check_isomorphism_pair(&self, other: &QuasiCrystal, psi: &[EltId]) -> bool {
        if self.sys != other.sys || psi.len() != self.len() || other.len() != self.len() {
            return false;
        }
        let mut hit = vec![false; other.len()];
        for &img in psi {
            if img.0 >= other.len() || hit[img.0] {
                return false;
            }
            hit[img.0] = true;
        }
        for pos in 0..self.sys.index_set().len() {
            for x in self.elements() {
                let y = psi[x.0];
                if self.weight(x) != other.weight(y)
                    || self.eps_pos(pos, x) != other.eps_pos(pos, y)
                    || self.phi_pos(pos, x) != other.phi_pos(pos, y)
                {
                    return false;
                }
                if let Some(ex) = self.e_pos(pos, x) {
                    if other.e_pos(pos, y) != Some(psi[ex.0]) {
                        return false;
                    }
                }
                if let Some(fx) = self.f_pos(pos, x) {
                    if other.f_pos(pos, y) != Some(psi[fx.0]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Structural equality up to the label (tables, names, weights, system).
    pub fn same_structure(&self, other: &QuasiCrystal) -> bool {
        self.sys == other.sys
            && self.names == other.names
            && self.weights == other.weights
            && self.eps == other.eps
            && self.phi == other.phi
            && self.e_ops == other.e_ops
            && self.f_ops == other.f_ops
    }

    /// Parse the JSON schema without checking the seminormality axioms.
    /// Structural problems (bad shapes, unknown names or indices) are still
    /// rejected.
    pub fn parse_json(text: &str) -> Result<QuasiCrystal> {
        let repr: CrystalRepr = serde_json::from_str(text)?;
        let mut hasher = Sha256::new();
        hasher.update(text.as_bytes());
        let digest = hasher.finalize();
        let label = format!("json:{:.16}", hex_string(&digest));
        repr.assemble(label)
    }

    /// Load a quasi-crystal from its JSON description, validating eagerly:
    /// inputs that violate the seminormality axioms are rejected with the
    /// full violation report.
    pub fn from_json(text: &str) -> Result<QuasiCrystal> {
        let qc = QuasiCrystal::parse_json(text)?;
        let report = qc.validate_seminormal();
        if report.is_empty() {
            Ok(qc)
        } else {
            Err(Error::InvalidCrystal(Box::new(report)))
        }
    }

    /// Serialize to the JSON schema. Deterministic: map keys are sorted and
    /// element order is the carrier order.
    pub fn to_json(&self) -> String {
        let mut ops = BTreeMap::new();
        for (pos, &i) in self.sys.index_set().iter().enumerate() {
            let f: BTreeMap<String, String> = self.f_ops[pos]
                .iter()
                .enumerate()
                .filter_map(|(x, t)| t.map(|y| (self.names[x].clone(), self.names[y].clone())))
                .collect();
            let e: BTreeMap<String, String> = self.e_ops[pos]
                .iter()
                .enumerate()
                .filter_map(|(x, t)| t.map(|y| (self.names[x].clone(), self.names[y].clone())))
                .collect();
            ops.insert(i.to_string(), OpsRepr { f, e: Some(e) });
        }
        let repr = CrystalRepr {
            system: self.sys.clone(),
            elements: self.names.clone(),
            wt: self.weights.iter().map(|w| w.coords().to_vec()).collect(),
            ops,
            eps: self
                .sys
                .index_set()
                .iter()
                .enumerate()
                .map(|(pos, i)| (i.to_string(), self.eps[pos].clone()))
                .collect(),
            phi: self
                .sys
                .index_set()
                .iter()
                .enumerate()
                .map(|(pos, i)| (i.to_string(), self.phi[pos].clone()))
                .collect(),
        };
        let mut out = serde_json::to_string_pretty(&repr).expect("crystal serialization");
        out.push('\n');
        out
    }
}

/// Number of times `step` applies starting from `x`, or `None` if the chain
/// fails to terminate within `bound` steps (a cycle in a corrupt table).
fn chain_len(step: impl Fn(EltId) -> Option<EltId>, x: EltId, bound: usize) -> Option<usize> {
    let mut cur = x;
    let mut steps = 0;
    while let Some(next) = step(cur) {
        steps += 1;
        if steps > bound {
            return None;
        }
        cur = next;
    }
    Some(steps)
}

fn hex_string(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Serialize, Deserialize)]
struct OpsRepr {
    #[serde(default)]
    f: BTreeMap<String, String>,
    /// Raising operator; derived as the inverse of `f` when omitted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    e: Option<BTreeMap<String, String>>,
}

#[derive(Serialize, Deserialize)]
struct CrystalRepr {
    system: RootSystem,
    elements: Vec<String>,
    wt: Vec<Vec<i64>>,
    #[serde(default)]
    ops: BTreeMap<String, OpsRepr>,
    eps: BTreeMap<String, Vec<ExtInt>>,
    phi: BTreeMap<String, Vec<ExtInt>>,
}

impl CrystalRepr {
    fn assemble(self, label: String) -> Result<QuasiCrystal> {
        let n = self.elements.len();
        let k = self.system.index_set().len();
        if self.wt.len() != n {
            return Err(Error::parse(format!(
                "wt lists {} rows for {} elements",
                self.wt.len(),
                n
            )));
        }
        let weights: Vec<Weight> = self.wt.into_iter().map(Weight::new).collect();

        let mut id_of = HashMap::with_capacity(n);
        for (id, name) in self.elements.iter().enumerate() {
            id_of.insert(name.clone(), id);
        }
        let lookup = |name: &str| -> Result<usize> {
            id_of
                .get(name)
                .copied()
                .ok_or_else(|| Error::parse(format!("unknown element {name:?}")))
        };
        let index_pos = |key: &str| -> Result<usize> {
            let i: usize = key
                .parse()
                .map_err(|_| Error::parse(format!("index key {key:?} is not an integer")))?;
            self.system
                .index_pos(i)
                .map_err(|_| Error::parse(format!("index {i} is not in the index set")))
        };

        let mut e_ops = vec![vec![None; n]; k];
        let mut f_ops = vec![vec![None; n]; k];
        for (key, ops) in &self.ops {
            let pos = index_pos(key)?;
            for (from, to) in &ops.f {
                f_ops[pos][lookup(from)?] = Some(lookup(to)?);
            }
            match &ops.e {
                Some(e) => {
                    for (from, to) in e {
                        e_ops[pos][lookup(from)?] = Some(lookup(to)?);
                    }
                }
                None => {
                    // derive e as the inverse of f
                    for (from, to) in &ops.f {
                        e_ops[pos][lookup(to)?] = Some(lookup(from)?);
                    }
                }
            }
        }

        let mut eps = vec![vec![ExtInt::ZERO; n]; k];
        let mut phi = vec![vec![ExtInt::ZERO; n]; k];
        for (table, source, what) in [(&mut eps, &self.eps, "eps"), (&mut phi, &self.phi, "phi")] {
            for &i in self.system.index_set() {
                let key = i.to_string();
                let row = source
                    .get(&key)
                    .ok_or_else(|| Error::parse(format!("missing {what} row for index {i}")))?;
                if row.len() != n {
                    return Err(Error::parse(format!(
                        "{what} row for index {i} has {} entries for {n} elements",
                        row.len()
                    )));
                }
                table[self.system.index_pos(i).expect("index from index_set")] = row.clone();
            }
            for key in source.keys() {
                index_pos(key)?;
            }
        }

        QuasiCrystal::from_parts(
            label,
            self.system,
            self.elements,
            weights,
            e_ops,
            f_ops,
            eps,
            phi,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a3() -> QuasiCrystal {
        QuasiCrystal::standard_a(3).unwrap()
    }

    fn c2() -> QuasiCrystal {
        QuasiCrystal::standard_c(2).unwrap()
    }

    fn elt(q: &QuasiCrystal, name: &str) -> EltId {
        q.element_by_name(name).unwrap()
    }

    #[test]
    fn standard_a_tables() {
        let q = a3();
        assert_eq!(q.len(), 3);
        assert_eq!(q.op_f(1, elt(&q, "1")), Some(elt(&q, "2")));
        assert_eq!(q.op_e(1, elt(&q, "1")), None); // top of the 1-string
        assert_eq!(q.eps(2, elt(&q, "3")), ExtInt::Finite(1));
        assert_eq!(q.phi(2, elt(&q, "3")), ExtInt::ZERO);
        assert_eq!(q.weight(elt(&q, "2")), &Weight::unit(3, 2));
        assert!(QuasiCrystal::standard_a(1).is_err());
    }

    #[test]
    fn standard_c_tables() {
        let q = c2();
        assert_eq!(q.len(), 4);
        // carrier order 1 < 2 < 2̄ < 1̄
        let order: Vec<&str> = q.elements().map(|x| q.name(x)).collect();
        assert_eq!(order, ["1", "2", "-2", "-1"]);
        assert_eq!(q.op_f(2, elt(&q, "2")), Some(elt(&q, "-2"))); // f_n(n) = n̄
        assert_eq!(q.op_e(2, elt(&q, "-2")), Some(elt(&q, "2"))); // e_n(n̄) = n
        assert_eq!(q.op_f(1, elt(&q, "-2")), Some(elt(&q, "-1"))); // f_i(i+1̄) = ī
        assert_eq!(q.weight(elt(&q, "-1")), &Weight::new(vec![-1, 0]));
        assert!(QuasiCrystal::standard_c(1).is_err());
    }

    #[test]
    fn validator_accepts_standard_crystals() {
        for q in [a3(), c2(), QuasiCrystal::standard_a(4).unwrap(), QuasiCrystal::standard_c(3).unwrap()]
        {
            let report = q.validate_seminormal();
            assert!(report.is_empty(), "unexpected violations: {report}");
            assert!(q.is_crystal());
        }
    }

    #[test]
    fn validator_flags_deleted_edge() {
        // A_3 with the edge f_1(1) = 2 deleted (and e_1 kept consistent)
        // but the statistics untouched: condition (6) breaks at (1, 1).
        let q = a3();
        let mut f_ops = vec![vec![None; 3]; 2];
        let mut e_ops = vec![vec![None; 3]; 2];
        // keep only the 2-string edge f_2(2) = 3
        f_ops[1][1] = Some(2);
        e_ops[1][2] = Some(1);
        let eps = vec![
            vec![ExtInt::ZERO, ExtInt::Finite(1), ExtInt::ZERO],
            vec![ExtInt::ZERO, ExtInt::ZERO, ExtInt::Finite(1)],
        ];
        let phi = vec![
            vec![ExtInt::Finite(1), ExtInt::ZERO, ExtInt::ZERO],
            vec![ExtInt::ZERO, ExtInt::Finite(1), ExtInt::ZERO],
        ];
        let broken = QuasiCrystal::from_parts(
            "A:3-broken",
            q.sys().clone(),
            (1..=3).map(|x| x.to_string()).collect(),
            (1..=3).map(|x| Weight::unit(3, x)).collect(),
            e_ops,
            f_ops,
            eps,
            phi,
        )
        .unwrap();
        let report = broken.validate_seminormal();
        assert!(!report.is_empty());
        assert!(report
            .violations
            .iter()
            .any(|v| v.condition == 6 && v.element == "1" && v.index == 1));
    }

    #[test]
    fn is_crystal_detects_infinite_statistics() {
        let sys = RootSystem::type_a(2).unwrap();
        let q = QuasiCrystal::from_parts(
            "loopy",
            sys,
            vec!["x".into()],
            vec![Weight::zero(2)],
            vec![vec![None]],
            vec![vec![None]],
            vec![vec![ExtInt::PlusInf]],
            vec![vec![ExtInt::PlusInf]],
        )
        .unwrap();
        assert!(!q.is_crystal());
        assert!(q.validate_seminormal().is_empty());
    }

    #[test]
    fn isomorphism_pair_checks() {
        let q = a3();
        let identity: Vec<EltId> = q.elements().collect();
        assert!(q.check_isomorphism_pair(&q, &identity));
        // swapping 1 and 2 breaks weight preservation
        let swap = vec![EltId(1), EltId(0), EltId(2)];
        assert!(!q.check_isomorphism_pair(&q, &swap));
        // non-injective maps are rejected outright
        let collapse = vec![EltId(0), EltId(0), EltId(2)];
        assert!(!q.check_isomorphism_pair(&q, &collapse));
    }

    #[test]
    fn trivial_crystal_is_valid() {
        let q = QuasiCrystal::trivial(RootSystem::type_c(2).unwrap());
        assert_eq!(q.len(), 1);
        assert!(q.validate_seminormal().is_empty());
        assert!(q.is_crystal());
    }

    #[test]
    fn json_round_trip_standard() {
        for q in [a3(), c2()] {
            let text = q.to_json();
            let back = QuasiCrystal::from_json(&text).unwrap();
            assert!(back.same_structure(&q));
        }
    }

    #[test]
    fn json_derives_e_from_f_when_omitted() {
        let text = r#"{
            "system": {"kind": "A", "rank": 2},
            "elements": ["1", "2"],
            "wt": [[1, 0], [0, 1]],
            "ops": { "1": { "f": {"1": "2"} } },
            "eps": { "1": [0, 1] },
            "phi": { "1": [1, 0] }
        }"#;
        let q = QuasiCrystal::from_json(text).unwrap();
        assert_eq!(q.op_e(1, EltId(1)), Some(EltId(0)));
        assert!(q.same_structure(&QuasiCrystal::standard_a(2).unwrap()));
    }

    #[test]
    fn json_rejects_axiom_violations_eagerly() {
        // statistics claim a lowering step that the table does not have
        let text = r#"{
            "system": {"kind": "A", "rank": 2},
            "elements": ["1", "2"],
            "wt": [[1, 0], [0, 1]],
            "ops": {},
            "eps": { "1": [0, 1] },
            "phi": { "1": [1, 0] }
        }"#;
        match QuasiCrystal::from_json(text) {
            Err(Error::InvalidCrystal(report)) => assert!(report.has_condition(6)),
            other => panic!("expected InvalidCrystal, got {other:?}"),
        }
    }

    #[test]
    fn json_rejects_structural_garbage() {
        let text = r#"{
            "system": {"kind": "A", "rank": 2},
            "elements": ["1", "2"],
            "wt": [[1, 0], [0, 1]],
            "ops": { "1": { "f": {"1": "7"} } },
            "eps": { "1": [0, 1] },
            "phi": { "1": [1, 0] }
        }"#;
        assert!(matches!(QuasiCrystal::parse_json(text), Err(Error::Parse(_))));
        // "+inf" literal parses into statistics
        let text = r#"{
            "system": {"kind": "A", "rank": 2},
            "elements": ["x"],
            "wt": [[0, 0]],
            "ops": {},
            "eps": { "1": ["+inf"] },
            "phi": { "1": ["+inf"] }
        }"#;
        let q = QuasiCrystal::from_json(text).unwrap();
        assert_eq!(q.eps(1, EltId(0)), ExtInt::PlusInf);
    }
}
