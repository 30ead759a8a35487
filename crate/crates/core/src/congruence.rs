//! Plactic (`≈`) and hypoplactic (`∼̈`) congruence decisions, bounded class
//! enumeration, congruence-property verification, and the quotient
//! analysis.
//!
//! `u ≈ v` holds exactly when some isomorphism of tensor-mode word
//! components maps `u` to `v`; `u ∼̈ v` is the same over quasi-tensor
//! components. Class enumeration is union-find seeded by component
//! traversal: one position-paired traversal relates every vertex of two
//! isomorphic components at once, so no quadratic sweep of word pairs is
//! needed. Candidate component pairs are filtered by a cheap exact
//! fingerprint (sorted vertex weights and statistics, labelled edge and
//! loop counts) before any traversal runs.
//!
//! Enumeration truth is bounded: a class reported at cutoff `L` contains
//! exactly its members of length at most `L`. Classes may well own longer
//! members (type C mixes lengths); completeness beyond the cutoff is not
//! decidable by enumeration alone.

use std::collections::{BTreeSet, HashMap};

use crate::cache::{pair_key, PairCache};
use crate::crystal::QuasiCrystal;
use crate::error::Result;
use crate::exact;
use crate::extint::ExtInt;
use crate::graphs::{self, ComponentGraph};
use crate::products::ProductMode;
use crate::words::{self, Word};

/// `u ≈ v`: some isomorphism of `⊗`-components sends `u` to `v`.
pub fn plactic_equiv(base: &QuasiCrystal, u: &Word, v: &Word, cap: usize) -> Result<bool> {
    graphs::iso_from(ProductMode::Tensor, base, u, v, cap)
}

/// `u ∼̈ v`: some isomorphism of `⊗̇`-components sends `u` to `v`.
pub fn hypo_equiv(base: &QuasiCrystal, u: &Word, v: &Word, cap: usize) -> Result<bool> {
    graphs::iso_from(ProductMode::QuasiTensor, base, u, v, cap)
}

/// Congruence decision with a decided-pair cache in front of it.
pub fn decide_equiv(
    base: &QuasiCrystal,
    mode: ProductMode,
    u: &Word,
    v: &Word,
    cap: usize,
    cache: &mut PairCache,
) -> Result<bool> {
    let key = pair_key(base, mode, u, v);
    if let Some(hit) = cache.get(&key) {
        return Ok(hit);
    }
    let verdict = graphs::iso_from(mode, base, u, v, cap)?;
    cache.put(&key, verdict)?;
    Ok(verdict)
}

/// One congruence class within the explored length bound.
#[derive(Clone, Debug)]
pub struct CongruenceClass {
    /// Shortlex-least member found.
    pub representative: Word,
    /// All members of length within the bound, shortlex-sorted.
    pub members: Vec<Word>,
    pub mode: ProductMode,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller id as root so representatives stay
            // shortlex-least (word ids are generated in shortlex order)
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Cheap iso-invariant of a whole component: sorted vertex invariants plus
/// labelled edge and loop counts.
type Fingerprint = (
    Vec<(Vec<i64>, Vec<(ExtInt, ExtInt)>)>,
    Vec<usize>,
    Vec<usize>,
);

fn component_fingerprint(g: &ComponentGraph) -> Fingerprint {
    let mut verts: Vec<(Vec<i64>, Vec<(ExtInt, ExtInt)>)> = g
        .vertices()
        .iter()
        .map(|v| (v.weight.coords().to_vec(), v.stats.clone()))
        .collect();
    verts.sort();
    let mut edge_labels: Vec<usize> = g.edges().iter().map(|e| e.label).collect();
    edge_labels.sort_unstable();
    let mut loop_labels: Vec<usize> = g.loops().iter().map(|&(_, l)| l).collect();
    loop_labels.sort_unstable();
    (verts, edge_labels, loop_labels)
}

fn vertex_fingerprint(g: &ComponentGraph, id: usize) -> (Vec<i64>, Vec<(ExtInt, ExtInt)>) {
    let v = &g.vertices()[id];
    (v.weight.coords().to_vec(), v.stats.clone())
}

/// Partition all words of length at most `max_len` into congruence classes.
///
/// Deterministic: classes are sorted by representative, members shortlex.
pub fn enumerate_classes(
    base: &QuasiCrystal,
    mode: ProductMode,
    max_len: usize,
    cap: usize,
) -> Result<Vec<CongruenceClass>> {
    let all = words::all_words(base, max_len);
    let word_id: HashMap<Word, usize> = all
        .iter()
        .enumerate()
        .map(|(k, w)| (w.clone(), k))
        .collect();

    // step 1: cover the word list by components
    let mut comp_of: Vec<Option<usize>> = vec![None; all.len()];
    let mut comps: Vec<ComponentGraph> = Vec::new();
    for (wid, w) in all.iter().enumerate() {
        if comp_of[wid].is_some() {
            continue;
        }
        let g = graphs::component(mode, base, w, cap)?;
        let cid = comps.len();
        for v in g.vertices() {
            let id = word_id[&v.word]; // operators preserve length, so every
                                       // vertex is within the bound
            comp_of[id] = Some(cid);
        }
        comps.push(g);
    }

    // step 2: group isomorphism candidates by fingerprint
    let mut groups: HashMap<Fingerprint, Vec<usize>> = HashMap::new();
    let mut group_order: Vec<Fingerprint> = Vec::new();
    for (cid, g) in comps.iter().enumerate() {
        let fp = component_fingerprint(g);
        let entry = groups.entry(fp.clone()).or_default();
        if entry.is_empty() {
            group_order.push(fp);
        }
        entry.push(cid);
    }

    // step 3: position-paired traversals seed the union-find
    let mut uf = UnionFind::new(all.len());
    for fp in &group_order {
        let members = &groups[fp];
        let ref_g = &comps[members[0]];
        let ref_root = ref_g.least_vertex().clone();
        let ref_fp = vertex_fingerprint(ref_g, ref_g.vertex_id(&ref_root).expect("own vertex"));
        for &cid in members {
            let g = &comps[cid];
            for (target_id, target) in g.vertices().iter().enumerate() {
                if cid == members[0] && target.word == ref_root {
                    continue; // identity pairing adds nothing
                }
                if vertex_fingerprint(g, target_id) != ref_fp {
                    continue;
                }
                if let Some(pairing) = graphs::iso_pairing(ref_g, g, &ref_root, &target.word) {
                    for (a, b) in pairing.iter().enumerate() {
                        let ua = word_id[&ref_g.vertices()[a].word];
                        let ub = word_id[&g.vertices()[*b].word];
                        uf.union(ua, ub);
                    }
                }
            }
        }
    }

    // step 4: assemble classes; iterating word ids in shortlex order keeps
    // members sorted and makes the first member the representative
    let mut classes: HashMap<usize, Vec<usize>> = HashMap::new();
    for wid in 0..all.len() {
        classes.entry(uf.find(wid)).or_default().push(wid);
    }
    let mut out: Vec<CongruenceClass> = classes
        .into_values()
        .map(|ids| {
            let members: Vec<Word> = ids.into_iter().map(|id| all[id].clone()).collect();
            CongruenceClass {
                representative: members[0].clone(),
                members,
                mode,
            }
        })
        .collect();
    out.sort_by(|a, b| a.representative.cmp(&b.representative));
    Ok(out)
}

/// A context pair that separated two supposedly congruent words.
#[derive(Clone, Debug)]
pub struct ContextViolation {
    pub u: Word,
    pub v: Word,
    pub left: Word,
    pub right: Word,
}

#[derive(Clone, Debug, Default)]
pub struct CongruenceReport {
    pub checked_pairs: usize,
    pub violations: Vec<ContextViolation>,
}

/// Verify that the relation behaves as a monoid congruence within the
/// bound: for every related pair `(u, v)` and all context words `x`, `y`
/// of length at most `context_len`, `xuy` and `xvy` are again related.
pub fn verify_congruence_property(
    base: &QuasiCrystal,
    mode: ProductMode,
    max_len: usize,
    context_len: usize,
    cap: usize,
) -> Result<CongruenceReport> {
    let classes = enumerate_classes(base, mode, max_len, cap)?;
    let contexts = words::all_words(base, context_len);
    let mut report = CongruenceReport::default();
    for class in &classes {
        let rep = &class.representative;
        for member in class.members.iter().skip(1) {
            for left in &contexts {
                for right in &contexts {
                    let framed_u = left.concat(rep).concat(right);
                    let framed_v = left.concat(member).concat(right);
                    report.checked_pairs += 1;
                    if !graphs::iso_from(mode, base, &framed_u, &framed_v, cap)? {
                        report.violations.push(ContextViolation {
                            u: rep.clone(),
                            v: member.clone(),
                            left: left.clone(),
                            right: right.clone(),
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Exact rational rank test on the set of distinct carrier weights.
pub fn weights_linearly_independent(base: &QuasiCrystal) -> bool {
    let distinct: BTreeSet<Vec<i64>> = base
        .elements()
        .map(|x| base.weight(x).coords().to_vec())
        .collect();
    let rows: Vec<Vec<i64>> = distinct.into_iter().collect();
    exact::rows_independent(&rows)
}

/// Outcome of the quotient sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuotientOutcome {
    /// Every plactic-congruent pair within the bound is hypoplactic-congruent.
    Holds,
    /// A pair that is plactic- but not hypoplactic-congruent.
    Counterexample(Word, Word),
}

/// Check `≈ ⊆ ∼̈` over all words of length at most `max_len`: returns the
/// first plactic pair (in class order) that fails hypoplactic equivalence.
pub fn verify_quotient_inclusion(
    base: &QuasiCrystal,
    max_len: usize,
    cap: usize,
    cache: &mut PairCache,
) -> Result<QuotientOutcome> {
    let classes = enumerate_classes(base, ProductMode::Tensor, max_len, cap)?;
    for class in &classes {
        let rep = &class.representative;
        for member in class.members.iter().skip(1) {
            if !decide_equiv(base, ProductMode::QuasiTensor, rep, member, cap, cache)? {
                return Ok(QuotientOutcome::Counterexample(member.clone(), rep.clone()));
            }
        }
    }
    Ok(QuotientOutcome::Holds)
}

/// A plactic-congruent permutation pair whose blocking-pair pattern differs
/// at some index.
#[derive(Clone, Debug)]
pub struct PermutationViolation {
    pub u: Word,
    pub v: Word,
    pub index: usize,
}

#[derive(Clone, Debug, Default)]
pub struct PermutationReport {
    pub checked_pairs: usize,
    pub violations: Vec<PermutationViolation>,
}

/// For every plactic-congruent pair `(u, v)` within the bound where `v` is
/// a letter permutation of `u`, and every index `i`: `u` has a letter with
/// `φ_i > 0` before a letter with `ε_i > 0` exactly when `v` does.
pub fn check_permutation_lemma(
    base: &QuasiCrystal,
    max_len: usize,
    cap: usize,
) -> Result<PermutationReport> {
    let classes = enumerate_classes(base, ProductMode::Tensor, max_len, cap)?;
    let mut report = PermutationReport::default();
    let multiset = |w: &Word| {
        let mut letters = w.letters().to_vec();
        letters.sort_unstable();
        letters
    };
    for class in &classes {
        for (a, u) in class.members.iter().enumerate() {
            for v in class.members.iter().skip(a + 1) {
                if multiset(u) != multiset(v) {
                    continue;
                }
                report.checked_pairs += 1;
                for &i in base.sys().index_set() {
                    let in_u = crate::transform::find_blocking_decomposition(base, u, i)?;
                    let in_v = crate::transform::find_blocking_decomposition(base, v, i)?;
                    if in_u.is_some() != in_v.is_some() {
                        report.violations.push(PermutationViolation {
                            u: u.clone(),
                            v: v.clone(),
                            index: i,
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::DEFAULT_VERTEX_CAP;

    const CAP: usize = DEFAULT_VERTEX_CAP;

    fn a2() -> QuasiCrystal {
        QuasiCrystal::standard_a(2).unwrap()
    }

    fn a3() -> QuasiCrystal {
        QuasiCrystal::standard_a(3).unwrap()
    }

    fn c3() -> QuasiCrystal {
        QuasiCrystal::standard_c(3).unwrap()
    }

    fn w(base: &QuasiCrystal, s: &str) -> Word {
        Word::parse(base, s).unwrap()
    }

    #[test]
    fn plactic_examples() {
        let base = c3();
        assert!(plactic_equiv(&base, &w(&base, "1 2 -2"), &w(&base, "1"), CAP).unwrap());
        let base = a3();
        assert!(plactic_equiv(&base, &w(&base, "223"), &w(&base, "232"), CAP).unwrap());
        let base = a2();
        assert!(!plactic_equiv(&base, &w(&base, "12"), &w(&base, "21"), CAP).unwrap());
    }

    #[test]
    fn hypoplactic_examples() {
        let base = a3();
        assert!(hypo_equiv(&base, &w(&base, "2121"), &w(&base, "1212"), CAP).unwrap());
        for base in [QuasiCrystal::standard_c(2).unwrap(), c3()] {
            assert!(hypo_equiv(&base, &w(&base, "1 -1"), &w(&base, "1 -1 1 -1"), CAP).unwrap());
            assert!(hypo_equiv(&base, &w(&base, "1 -1"), &w(&base, "-1 1 1 -1"), CAP).unwrap());
            assert!(!hypo_equiv(&base, &w(&base, "1 -1"), &Word::empty(), CAP).unwrap());
        }
    }

    #[test]
    fn class_enumeration_on_a2() {
        let base = a2();
        let classes = enumerate_classes(&base, ProductMode::Tensor, 2, CAP).unwrap();
        let rendered: Vec<Vec<String>> = classes
            .iter()
            .map(|c| c.members.iter().map(|m| m.display(&base)).collect())
            .collect();
        assert_eq!(
            rendered,
            vec![
                vec!["".to_string()],
                vec!["1".to_string()],
                vec!["2".to_string()],
                vec!["1 1".to_string()],
                vec!["1 2".to_string()],
                vec!["2 1".to_string()],
                vec!["2 2".to_string()],
            ]
        );
    }

    #[test]
    fn class_enumeration_agrees_with_pairwise_decisions() {
        // oracle: brute-force pairwise iso_from over all words
        for mode in [ProductMode::Tensor, ProductMode::QuasiTensor] {
            let base = a2();
            let all = words::all_words(&base, 3);
            let classes = enumerate_classes(&base, mode, 3, CAP).unwrap();
            let mut class_of: HashMap<&Word, usize> = HashMap::new();
            for (k, class) in classes.iter().enumerate() {
                for m in &class.members {
                    class_of.insert(m, k);
                }
            }
            assert_eq!(class_of.len(), all.len(), "classes partition the words");
            for u in &all {
                for v in &all {
                    let same = graphs::iso_from(mode, &base, u, v, CAP).unwrap();
                    assert_eq!(
                        class_of[u] == class_of[v],
                        same,
                        "partition disagrees with iso_from at {:?} {:?}",
                        u.display(&base),
                        v.display(&base)
                    );
                }
            }
        }
    }

    #[test]
    fn classes_can_mix_lengths() {
        let base = a3();
        let classes = enumerate_classes(&base, ProductMode::Tensor, 3, CAP).unwrap();
        let find = |word: &Word| {
            classes
                .iter()
                .find(|c| c.members.contains(word))
                .expect("word enumerated")
        };
        let class = find(&w(&base, "112"));
        assert!(class.members.contains(&w(&base, "121")));

        let base = c3();
        let classes = enumerate_classes(&base, ProductMode::Tensor, 3, CAP).unwrap();
        let one = w(&base, "1");
        let class = classes
            .iter()
            .find(|c| c.members.contains(&one))
            .expect("letter enumerated");
        assert!(class.members.contains(&w(&base, "1 2 -2")));
        assert_eq!(class.representative, one);
    }

    #[test]
    fn congruence_property_reports() {
        let base = a2();
        for mode in [ProductMode::Tensor, ProductMode::QuasiTensor] {
            let report = verify_congruence_property(&base, mode, 3, 1, CAP).unwrap();
            assert!(report.checked_pairs > 0);
            assert!(report.violations.is_empty());
        }
        // length bound 0 relates nothing beyond the empty word: vacuous
        let report =
            verify_congruence_property(&base, ProductMode::Tensor, 0, 1, CAP).unwrap();
        assert_eq!(report.checked_pairs, 0);
    }

    #[test]
    fn weight_independence() {
        assert!(weights_linearly_independent(&a2()));
        assert!(weights_linearly_independent(&a3()));
        assert!(!weights_linearly_independent(
            &QuasiCrystal::standard_c(2).unwrap()
        ));
        // one-element crystal with weight e1
        let sys = crate::rootsys::RootSystem::type_a(2).unwrap();
        let single = QuasiCrystal::from_parts(
            "single",
            sys,
            vec!["x".into()],
            vec![crate::rootsys::Weight::unit(2, 1)],
            vec![vec![None]],
            vec![vec![None]],
            vec![vec![ExtInt::PlusInf]],
            vec![vec![ExtInt::PlusInf]],
        )
        .unwrap();
        assert!(weights_linearly_independent(&single));
    }

    #[test]
    fn quotient_inclusion() {
        let base = a2();
        let mut cache = PairCache::off();
        assert_eq!(
            verify_quotient_inclusion(&base, 0, CAP, &mut cache).unwrap(),
            QuotientOutcome::Holds
        );
        assert_eq!(
            verify_quotient_inclusion(&base, 3, CAP, &mut cache).unwrap(),
            QuotientOutcome::Holds
        );

        // C_3 already fails at length 2: 1 1̄ ≈ ε but 1 1̄ ̸∼̈ ε
        let base = c3();
        let outcome = verify_quotient_inclusion(&base, 2, CAP, &mut cache).unwrap();
        match outcome {
            QuotientOutcome::Counterexample(u, v) => {
                assert!(plactic_equiv(&base, &u, &v, CAP).unwrap());
                assert!(!hypo_equiv(&base, &u, &v, CAP).unwrap());
            }
            QuotientOutcome::Holds => panic!("expected a counterexample over C_3"),
        }
    }

    #[test]
    fn permutation_lemma_small_cases() {
        let report = check_permutation_lemma(&a2(), 3, CAP).unwrap();
        assert!(report.violations.is_empty());
        // single letters admit no pairs at all
        let report = check_permutation_lemma(&a2(), 1, CAP).unwrap();
        assert_eq!(report.checked_pairs, 0);
        let report = check_permutation_lemma(&a3(), 3, CAP).unwrap();
        assert!(report.checked_pairs > 0);
        assert!(report.violations.is_empty());
    }

    #[test]
    fn equivalent_words_share_weight_and_a_letter_multiset_over_a() {
        let base = a3();
        let classes = enumerate_classes(&base, ProductMode::Tensor, 3, CAP).unwrap();
        for class in &classes {
            let rep_wt = words::word_weight(&base, &class.representative).unwrap();
            let rep_multiset = {
                let mut l = class.representative.letters().to_vec();
                l.sort_unstable();
                l
            };
            for m in &class.members {
                assert_eq!(words::word_weight(&base, m).unwrap(), rep_wt);
                let mut l = m.letters().to_vec();
                l.sort_unstable();
                // independent weights force equal letter multisets
                assert_eq!(l, rep_multiset);
            }
        }
    }

    #[test]
    fn cached_decisions_match_uncached() {
        let dir = tempfile::tempdir().unwrap();
        let base = c3();
        let mut cold = PairCache::open(dir.path()).unwrap();
        let cold_outcome = verify_quotient_inclusion(&base, 2, CAP, &mut cold).unwrap();
        let mut warm = PairCache::open(dir.path()).unwrap();
        let warm_outcome = verify_quotient_inclusion(&base, 2, CAP, &mut warm).unwrap();
        assert_eq!(cold_outcome, warm_outcome);
    }
}
