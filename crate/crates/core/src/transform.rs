//! Deriving quasi-tensor structure from tensor structure on the free word
//! monoid, and the matching graph rewrite.
//!
//! On an equidivisible monoid the quasi-tensor operators agree with the
//! tensor operators except where a blocking decomposition exists: a factor
//! with `φ_i > 0` followed by a factor with `ε_i > 0`. For the free word
//! monoid this factor-level condition reduces to a letter-level one — some
//! letter with `φ_i > 0` occurring before some letter with `ε_i > 0` — so a
//! single scan per index decides it. Free monoids are equidivisible
//! (Levi's property); [`levi_decompose`] produces the overlap witness.

use std::collections::HashSet;

use crate::crystal::QuasiCrystal;
use crate::error::{Error, Result};
use crate::extint::ExtInt;
use crate::graphs::ComponentGraph;
use crate::products::ProductMode;
use crate::words::{self, Word};

/// A letter-level blocking decomposition `w = u₁ x u₂ y u₃` for index `i`:
/// `x` at `left_pos` has `φ_i(x) > 0`, `y` at `right_pos` has `ε_i(y) > 0`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct BlockingPair {
    pub index: usize,
    pub left_pos: usize,
    pub right_pos: usize,
}

/// The leftmost blocking pair of `w` for index `i`, or `None` when no
/// factorization `w = uv` with `φ_i(u) > 0` and `ε_i(v) > 0` exists.
pub fn find_blocking_decomposition(
    base: &QuasiCrystal,
    w: &Word,
    i: usize,
) -> Result<Option<BlockingPair>> {
    words::word_weight(base, w)?; // validates the letters
    let pos = base.sys().index_pos(i)?;
    let Some(left_pos) = w
        .letters()
        .iter()
        .position(|&x| base.phi_pos(pos, x).is_positive())
    else {
        return Ok(None);
    };
    let right = w.letters()[left_pos + 1..]
        .iter()
        .position(|&y| base.eps_pos(pos, y).is_positive());
    Ok(right.map(|offset| BlockingPair {
        index: i,
        left_pos,
        right_pos: left_pos + 1 + offset,
    }))
}

/// The quasi-tensor structure values `(e, f, ε, φ)` of `w` at index `i`,
/// derived from the tensor structure: blocked words get
/// `(⊥, ⊥, +∞, +∞)`, everything else keeps the tensor values verbatim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedStructure {
    pub e: Option<Word>,
    pub f: Option<Word>,
    pub eps: ExtInt,
    pub phi: ExtInt,
}

pub fn derive_qtensor_structure(
    base: &QuasiCrystal,
    w: &Word,
    i: usize,
) -> Result<DerivedStructure> {
    if find_blocking_decomposition(base, w, i)?.is_some() {
        return Ok(DerivedStructure {
            e: None,
            f: None,
            eps: ExtInt::PlusInf,
            phi: ExtInt::PlusInf,
        });
    }
    let (eps, phi) = words::word_stats(ProductMode::Tensor, base, i, w)?;
    Ok(DerivedStructure {
        e: words::word_e(ProductMode::Tensor, base, i, w)?,
        f: words::word_f(ProductMode::Tensor, base, i, w)?,
        eps,
        phi,
    })
}

/// Rewrite a tensor-mode word graph into the quasi-tensor-mode graph on the
/// same vertex set: wherever a vertex has a blocking pair for `i`, delete
/// every `i`-labelled non-loop edge incident to it and put an `i`-labelled
/// loop there instead. The result may split into several components.
pub fn transform_graph(base: &QuasiCrystal, g: &ComponentGraph) -> Result<ComponentGraph> {
    if g.mode() != ProductMode::Tensor {
        return Err(Error::domain("transform_graph expects a tensor-mode graph"));
    }
    let index_set = g.index_set().to_vec();

    // gather all (vertex, label) blockings first, then apply in one pass
    let mut blocked: HashSet<(usize, usize)> = HashSet::new();
    for (v, vd) in g.vertices().iter().enumerate() {
        for &i in &index_set {
            if find_blocking_decomposition(base, &vd.word, i)?.is_some() {
                blocked.insert((v, i));
            }
        }
    }

    let edges: Vec<_> = g
        .edges()
        .iter()
        .filter(|e| {
            !blocked.contains(&(e.from, e.label)) && !blocked.contains(&(e.to, e.label))
        })
        .copied()
        .collect();

    let mut vertices = g.vertices().to_vec();
    let mut loops: Vec<(usize, usize)> = Vec::new();
    let old_loops: HashSet<(usize, usize)> = g.loops().iter().copied().collect();
    for (v, vd) in vertices.iter_mut().enumerate() {
        for (pos, &i) in index_set.iter().enumerate() {
            if blocked.contains(&(v, i)) {
                vd.stats[pos] = (ExtInt::PlusInf, ExtInt::PlusInf);
                loops.push((v, i));
            } else if old_loops.contains(&(v, i)) {
                loops.push((v, i));
            }
        }
    }

    Ok(ComponentGraph::from_raw(
        ProductMode::QuasiTensor,
        g.root().clone(),
        index_set,
        vertices,
        edges,
        loops,
    ))
}

/// Which way the overlap witness of [`levi_decompose`] attaches.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum LeviSide {
    /// `x2 = x1 · z` and `y1 = z · y2`.
    FirstIsPrefix,
    /// `x1 = x2 · z` and `y2 = z · y1`.
    SecondIsPrefix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeviWitness {
    pub overlap: Word,
    pub side: LeviSide,
}

/// Equidivisibility witness for the free monoid: given `x1·y1 = x2·y2`,
/// produce the overlap `z` (the slice at the length difference).
pub fn levi_decompose(x1: &Word, y1: &Word, x2: &Word, y2: &Word) -> Result<LeviWitness> {
    if x1.concat(y1) != x2.concat(y2) {
        return Err(Error::domain("concatenations differ; no overlap witness"));
    }
    if x1.len() <= x2.len() {
        let overlap = Word::new(x2.letters()[x1.len()..].to_vec());
        Ok(LeviWitness {
            overlap,
            side: LeviSide::FirstIsPrefix,
        })
    } else {
        let overlap = Word::new(x1.letters()[x2.len()..].to_vec());
        Ok(LeviWitness {
            overlap,
            side: LeviSide::SecondIsPrefix,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{self, DEFAULT_VERTEX_CAP};

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
    fn blocking_pairs() {
        let base = a3();
        // letter 1 (φ₁ = 1) before letter 2 (ε₁ = 1)
        assert_eq!(
            find_blocking_decomposition(&base, &w(&base, "112"), 1).unwrap(),
            Some(BlockingPair {
                index: 1,
                left_pos: 0,
                right_pos: 2
            })
        );
        let base = c3();
        // 2 before 2̄ for i = 2
        assert_eq!(
            find_blocking_decomposition(&base, &w(&base, "1 2 -2"), 2).unwrap(),
            Some(BlockingPair {
                index: 2,
                left_pos: 1,
                right_pos: 2
            })
        );
        // single letters admit no pair
        assert_eq!(
            find_blocking_decomposition(&base, &w(&base, "2"), 1).unwrap(),
            None
        );
    }

    #[test]
    fn derived_structure_examples() {
        let base = a3();
        let blocked = derive_qtensor_structure(&base, &w(&base, "112"), 1).unwrap();
        assert_eq!(
            blocked,
            DerivedStructure {
                e: None,
                f: None,
                eps: ExtInt::PlusInf,
                phi: ExtInt::PlusInf
            }
        );
        let open = derive_qtensor_structure(&base, &w(&base, "112"), 2).unwrap();
        assert_eq!(open.f, Some(w(&base, "113")));
        assert_eq!(open.eps, ExtInt::ZERO);

        let empty = derive_qtensor_structure(&base, &Word::empty(), 1).unwrap();
        assert_eq!(
            empty,
            DerivedStructure {
                e: None,
                f: None,
                eps: ExtInt::ZERO,
                phi: ExtInt::ZERO
            }
        );
    }

    #[test]
    fn derivation_matches_direct_quasi_tensor_evaluation() {
        for base in [a3(), QuasiCrystal::standard_c(2).unwrap()] {
            for word in words::all_words(&base, 4) {
                for &i in base.sys().index_set() {
                    let derived = derive_qtensor_structure(&base, &word, i).unwrap();
                    let (eps, phi) =
                        words::word_stats(ProductMode::QuasiTensor, &base, i, &word).unwrap();
                    assert_eq!((derived.eps, derived.phi), (eps, phi));
                    assert_eq!(
                        derived.e,
                        words::word_e(ProductMode::QuasiTensor, &base, i, &word).unwrap()
                    );
                    assert_eq!(
                        derived.f,
                        words::word_f(ProductMode::QuasiTensor, &base, i, &word).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn transform_reproduces_the_a3_rewrite() {
        let base = a3();
        let g = graphs::component(ProductMode::Tensor, &base, &w(&base, "112"), DEFAULT_VERTEX_CAP)
            .unwrap();
        let t = transform_graph(&base, &g).unwrap();
        assert_eq!(t.vertex_count(), 8);
        // removed: 112 →1→ 212 and 223 →2→ 323
        assert_eq!(t.edge_count(), 6);
        let fmt = |v: usize| t.vertices()[v].word.display(&base).replace(' ', "");
        let mut loops: Vec<(String, usize)> =
            t.loops().iter().map(|&(v, l)| (fmt(v), l)).collect();
        loops.sort();
        assert_eq!(
            loops,
            [
                ("112".to_string(), 1),
                ("212".to_string(), 1),
                ("213".to_string(), 2),
                ("223".to_string(), 2),
                ("312".to_string(), 1),
                ("323".to_string(), 2)
            ]
        );
        let mut edges: Vec<(String, usize, String)> = t
            .edges()
            .iter()
            .map(|e| (fmt(e.from), e.label, fmt(e.to)))
            .collect();
        edges.sort();
        assert_eq!(
            edges,
            [
                ("112".to_string(), 2, "113".to_string()),
                ("113".to_string(), 1, "213".to_string()),
                ("212".to_string(), 2, "312".to_string()),
                ("213".to_string(), 1, "223".to_string()),
                ("312".to_string(), 2, "313".to_string()),
                ("313".to_string(), 1, "323".to_string())
            ]
        );
    }

    #[test]
    fn transform_reproduces_the_c3_rewrite() {
        let base = c3();
        let g = graphs::component(
            ProductMode::Tensor,
            &base,
            &w(&base, "1 2 -2"),
            DEFAULT_VERTEX_CAP,
        )
        .unwrap();
        assert_eq!(g.vertex_count(), 6);
        let t = transform_graph(&base, &g).unwrap();
        let fmt = |v: usize| t.vertices()[v].word.display(&base);
        // removed the two 1-labelled edges
        let mut edges: Vec<(String, usize, String)> = t
            .edges()
            .iter()
            .map(|e| (fmt(e.from), e.label, fmt(e.to)))
            .collect();
        edges.sort();
        assert_eq!(
            edges,
            [
                ("1 -3 -1".to_string(), 2, "1 -2 -1".to_string()),
                ("1 2 -1".to_string(), 2, "1 3 -1".to_string()),
                ("1 3 -1".to_string(), 3, "1 -3 -1".to_string())
            ]
        );
        // 1-loops on every vertex, 2-loops on 12  2̄ and 2 2̄ 1̄
        let mut loops: Vec<(String, usize)> =
            t.loops().iter().map(|&(v, l)| (fmt(v), l)).collect();
        loops.sort();
        assert_eq!(
            loops,
            [
                ("1 -2 -1".to_string(), 1),
                ("1 -3 -1".to_string(), 1),
                ("1 2 -1".to_string(), 1),
                ("1 2 -2".to_string(), 1),
                ("1 2 -2".to_string(), 2),
                ("1 3 -1".to_string(), 1),
                ("2 -2 -1".to_string(), 1),
                ("2 -2 -1".to_string(), 2)
            ]
        );
    }

    #[test]
    fn transform_matches_directly_built_quasi_tensor_graph() {
        let base = QuasiCrystal::standard_a(2).unwrap();
        let all = words::all_words(&base, 3);
        let full_tensor =
            graphs::word_graph(ProductMode::Tensor, &base, &all, Word::empty()).unwrap();
        let rewritten = transform_graph(&base, &full_tensor).unwrap();
        let direct =
            graphs::word_graph(ProductMode::QuasiTensor, &base, &all, Word::empty()).unwrap();
        assert!(rewritten.same_fragment(&direct));
    }

    #[test]
    fn transform_leaves_loop_free_singletons_alone() {
        let base = a3();
        let g = graphs::component(ProductMode::Tensor, &base, &Word::empty(), DEFAULT_VERTEX_CAP)
            .unwrap();
        let t = transform_graph(&base, &g).unwrap();
        assert_eq!((t.vertex_count(), t.edge_count(), t.loop_count()), (1, 0, 0));
    }

    #[test]
    fn lowering_preserves_blocking_pairs() {
        let base = a3();
        for word in words::all_words(&base, 4) {
            for &i in base.sys().index_set() {
                if find_blocking_decomposition(&base, &word, i)
                    .unwrap()
                    .is_none()
                {
                    continue;
                }
                if let Some(image) = words::word_f(ProductMode::Tensor, &base, i, &word).unwrap() {
                    assert!(find_blocking_decomposition(&base, &image, i)
                        .unwrap()
                        .is_some());
                }
                if let Some(image) = words::word_e(ProductMode::Tensor, &base, i, &word).unwrap() {
                    assert!(find_blocking_decomposition(&base, &image, i)
                        .unwrap()
                        .is_some());
                }
            }
        }
    }

    #[test]
    fn blocking_pairs_survive_context() {
        let base = a3();
        let contexts = words::all_words(&base, 2);
        for inner in words::all_words(&base, 3) {
            for &i in base.sys().index_set() {
                if find_blocking_decomposition(&base, &inner, i)
                    .unwrap()
                    .is_none()
                {
                    continue;
                }
                for left in &contexts {
                    for right in &contexts {
                        let framed = left.concat(&inner).concat(right);
                        assert!(find_blocking_decomposition(&base, &framed, i)
                            .unwrap()
                            .is_some());
                    }
                }
            }
        }
    }

    #[test]
    fn levi_witnesses() {
        let a4 = QuasiCrystal::standard_a(4).unwrap();
        // (12)(34) = (123)(4): overlap 3 extends the first factor
        let witness = levi_decompose(
            &w(&a4, "12"),
            &w(&a4, "34"),
            &w(&a4, "123"),
            &w(&a4, "4"),
        )
        .unwrap();
        assert_eq!(witness.overlap, w(&a4, "3"));
        assert_eq!(witness.side, LeviSide::FirstIsPrefix);

        let word = w(&a4, "1234");
        let trivially = levi_decompose(&word, &Word::empty(), &word, &Word::empty()).unwrap();
        assert_eq!(trivially.overlap, Word::empty());

        // mirrored split
        let witness = levi_decompose(
            &w(&a4, "123"),
            &w(&a4, "4"),
            &w(&a4, "1"),
            &w(&a4, "234"),
        )
        .unwrap();
        assert_eq!(witness.overlap, w(&a4, "23"));
        assert_eq!(witness.side, LeviSide::SecondIsPrefix);

        assert!(levi_decompose(
            &Word::empty(),
            &w(&a4, "12"),
            &w(&a4, "21"),
            &Word::empty()
        )
        .is_err());
    }
}
