//! Components of the quasi-crystal graph over a free word monoid, rooted
//! component isomorphism, and DOT/JSON export.
//!
//! A component is closed under every defined `e_i`/`f_i`; since the word
//! operators preserve length, components are finite. An `i`-labelled edge
//! `u → v` records `f_i(u) = v` (equivalently `e_i(v) = u`), and an
//! `i`-labelled loop on `w` records `ε_i(w) = +∞`. Per label every vertex
//! has at most one outgoing and one incoming non-loop edge, so a
//! homomorphism is pinned down by the image of a single vertex: the rooted
//! isomorphism check below extends the designated pair along operator edges
//! and rejects on the first conflict, no backtracking needed.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::crystal::QuasiCrystal;
use crate::error::{Error, Result};
use crate::extint::ExtInt;
use crate::products::ProductMode;
use crate::rootsys::Weight;
use crate::words::{self, Word};

/// Default bound on the number of vertices a single construction may touch.
pub const DEFAULT_VERTEX_CAP: usize = 1_000_000;

/// One vertex of a component: the word plus its cached weight and
/// per-index statistics (aligned with the index set).
#[derive(Clone, Debug, PartialEq)]
pub struct VertexData {
    pub word: Word,
    pub weight: Weight,
    pub stats: Vec<(ExtInt, ExtInt)>,
}

/// A labelled edge `from → to` recording `f_label(from) = to`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub label: usize,
}

/// A `Λ`-weighted, `I`-labelled digraph fragment with loops.
///
/// Usually one connected component (built by [`component`]); the graph
/// rewrite in [`crate::transform`] and [`word_graph`] may hold a disjoint
/// union of components over the same vertex set.
#[derive(Clone, Debug)]
pub struct ComponentGraph {
    mode: ProductMode,
    root: Word,
    index_set: Vec<usize>,
    vertices: Vec<VertexData>,
    index: HashMap<Word, usize>,
    edges: Vec<Edge>,
    loops: Vec<(usize, usize)>,
}

impl ComponentGraph {
    pub(crate) fn from_raw(
        mode: ProductMode,
        root: Word,
        index_set: Vec<usize>,
        vertices: Vec<VertexData>,
        edges: Vec<Edge>,
        loops: Vec<(usize, usize)>,
    ) -> ComponentGraph {
        let index = vertices
            .iter()
            .enumerate()
            .map(|(k, v)| (v.word.clone(), k))
            .collect();
        ComponentGraph {
            mode,
            root,
            index_set,
            vertices,
            index,
            edges,
            loops,
        }
    }

    /// The index set the per-vertex statistics are aligned with.
    pub fn index_set(&self) -> &[usize] {
        &self.index_set
    }

    fn label_pos(&self, label: usize) -> usize {
        self.index_set
            .iter()
            .position(|&l| l == label)
            .expect("edge label belongs to the index set")
    }

    pub fn mode(&self) -> ProductMode {
        self.mode
    }

    pub fn root(&self) -> &Word {
        &self.root
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn loop_count(&self) -> usize {
        self.loops.len()
    }

    pub fn vertices(&self) -> &[VertexData] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Loops as `(vertex id, label)` pairs.
    pub fn loops(&self) -> &[(usize, usize)] {
        &self.loops
    }

    pub fn vertex_id(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Vertex ids sorted shortlex by word.
    pub fn sorted_vertex_ids(&self) -> Vec<usize> {
        let mut ids: Vec<usize> = (0..self.vertices.len()).collect();
        ids.sort_by(|&a, &b| self.vertices[a].word.cmp(&self.vertices[b].word));
        ids
    }

    /// The shortlex-least vertex word (the canonical key of the component).
    pub fn least_vertex(&self) -> &Word {
        self.vertices
            .iter()
            .map(|v| &v.word)
            .min()
            .expect("a component has at least one vertex")
    }

    /// Same vertex set, edges, loops, and cached data, ignoring the root.
    pub fn same_fragment(&self, other: &ComponentGraph) -> bool {
        if self.mode != other.mode || self.vertices.len() != other.vertices.len() {
            return false;
        }
        let mine = self.sorted_vertex_ids();
        let theirs = other.sorted_vertex_ids();
        for (&a, &b) in mine.iter().zip(&theirs) {
            if self.vertices[a] != other.vertices[b] {
                return false;
            }
        }
        let key = |g: &ComponentGraph, e: &Edge| {
            (
                g.vertices[e.from].word.clone(),
                e.label,
                g.vertices[e.to].word.clone(),
            )
        };
        let mut ea: Vec<_> = self.edges.iter().map(|e| key(self, e)).collect();
        let mut eb: Vec<_> = other.edges.iter().map(|e| key(other, e)).collect();
        ea.sort();
        eb.sort();
        if ea != eb {
            return false;
        }
        let mut la: Vec<_> = self
            .loops
            .iter()
            .map(|&(v, i)| (self.vertices[v].word.clone(), i))
            .collect();
        let mut lb: Vec<_> = other
            .loops
            .iter()
            .map(|&(v, i)| (other.vertices[v].word.clone(), i))
            .collect();
        la.sort();
        lb.sort();
        la == lb
    }

    /// Materialize this fragment as an explicit quasi-crystal whose carrier
    /// is the vertex set. Vertex names replace spaces with `_` (the empty
    /// word becomes `ε`) to stay single-token.
    pub fn to_quasi_crystal(&self, base: &QuasiCrystal) -> QuasiCrystal {
        let order = self.sorted_vertex_ids();
        let place: HashMap<usize, usize> = order.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let names: Vec<String> = order
            .iter()
            .map(|&v| {
                let text = self.vertices[v].word.display(base);
                if text.is_empty() {
                    "ε".to_string()
                } else {
                    text.replace(' ', "_")
                }
            })
            .collect();
        let weights: Vec<Weight> = order
            .iter()
            .map(|&v| self.vertices[v].weight.clone())
            .collect();
        let k = base.sys().index_set().len();
        let n = order.len();
        let mut e_ops = vec![vec![None; n]; k];
        let mut f_ops = vec![vec![None; n]; k];
        let mut eps = vec![vec![ExtInt::ZERO; n]; k];
        let mut phi = vec![vec![ExtInt::ZERO; n]; k];
        for (pos, _) in base.sys().index_set().iter().enumerate() {
            for (slot, &v) in order.iter().enumerate() {
                eps[pos][slot] = self.vertices[v].stats[pos].0;
                phi[pos][slot] = self.vertices[v].stats[pos].1;
            }
        }
        for e in &self.edges {
            let pos = base
                .sys()
                .index_pos(e.label)
                .expect("edge label from the index set");
            f_ops[pos][place[&e.from]] = Some(place[&e.to]);
            e_ops[pos][place[&e.to]] = Some(place[&e.from]);
        }
        QuasiCrystal::from_parts(
            format!("component:{}", self.mode),
            base.sys().clone(),
            names,
            weights,
            e_ops,
            f_ops,
            eps,
            phi,
        )
        .expect("component tables are structurally sound")
    }
}

fn vertex_data(mode: ProductMode, base: &QuasiCrystal, w: &Word) -> VertexData {
    let k = base.sys().index_set().len();
    let stats: Vec<(ExtInt, ExtInt)> = (0..k)
        .map(|pos| words::sgn_at(mode, base, pos, w).stats())
        .collect();
    let mut weight = Weight::zero(base.sys().rank());
    for &x in w.letters() {
        weight.add_assign(base.weight(x));
    }
    VertexData {
        word: w.clone(),
        weight,
        stats,
    }
}

/// Breadth-first closure of `{w}` under all defined word operators.
pub fn component(
    mode: ProductMode,
    base: &QuasiCrystal,
    w: &Word,
    cap: usize,
) -> Result<ComponentGraph> {
    words::word_weight(base, w)?; // validates the letters
    let k = base.sys().index_set().len();

    let mut vertices: Vec<VertexData> = Vec::new();
    let mut index: HashMap<Word, usize> = HashMap::new();
    let mut edges = Vec::new();
    let mut loops = Vec::new();
    let mut queue = VecDeque::new();

    vertices.push(vertex_data(mode, base, w));
    index.insert(w.clone(), 0);
    queue.push_back(0usize);

    while let Some(v) = queue.pop_front() {
        let word = vertices[v].word.clone();
        for pos in 0..k {
            let label = base.sys().index_set()[pos];
            if vertices[v].stats[pos].0.is_infinite() {
                loops.push((v, label));
                continue;
            }
            if let Some(up) = words::word_e_at(mode, base, pos, &word) {
                intern(mode, base, &mut vertices, &mut index, &mut queue, up, cap)?;
            }
            if let Some(down) = words::word_f_at(mode, base, pos, &word) {
                let to = intern(mode, base, &mut vertices, &mut index, &mut queue, down, cap)?;
                edges.push(Edge {
                    from: v,
                    to,
                    label,
                });
            }
        }
    }

    Ok(ComponentGraph {
        mode,
        root: w.clone(),
        index_set: base.sys().index_set().to_vec(),
        vertices,
        index,
        edges,
        loops,
    })
}

fn intern(
    mode: ProductMode,
    base: &QuasiCrystal,
    vertices: &mut Vec<VertexData>,
    index: &mut HashMap<Word, usize>,
    queue: &mut VecDeque<usize>,
    w: Word,
    cap: usize,
) -> Result<usize> {
    if let Some(&id) = index.get(&w) {
        return Ok(id);
    }
    if vertices.len() >= cap {
        return Err(Error::CapExceeded { cap });
    }
    let id = vertices.len();
    vertices.push(vertex_data(mode, base, &w));
    index.insert(w, id);
    queue.push_back(id);
    Ok(id)
}

/// The graph induced on an explicit vertex set, which must be closed under
/// the defined word operators (all words of a bounded length are).
pub fn word_graph(
    mode: ProductMode,
    base: &QuasiCrystal,
    vertex_words: &[Word],
    root: Word,
) -> Result<ComponentGraph> {
    let k = base.sys().index_set().len();
    let mut vertices = Vec::with_capacity(vertex_words.len());
    let mut index = HashMap::with_capacity(vertex_words.len());
    for w in vertex_words {
        words::word_weight(base, w)?;
        if index.insert(w.clone(), vertices.len()).is_some() {
            return Err(Error::domain("duplicate vertex word"));
        }
        vertices.push(vertex_data(mode, base, w));
    }
    let mut edges = Vec::new();
    let mut loops = Vec::new();
    for v in 0..vertices.len() {
        let word = vertices[v].word.clone();
        for pos in 0..k {
            let label = base.sys().index_set()[pos];
            if vertices[v].stats[pos].0.is_infinite() {
                loops.push((v, label));
                continue;
            }
            if let Some(down) = words::word_f_at(mode, base, pos, &word) {
                let to = *index
                    .get(&down)
                    .ok_or_else(|| Error::domain("vertex set is not closed under f_i"))?;
                edges.push(Edge {
                    from: v,
                    to,
                    label,
                });
            }
            if let Some(up) = words::word_e_at(mode, base, pos, &word) {
                if !index.contains_key(&up) {
                    return Err(Error::domain("vertex set is not closed under e_i"));
                }
            }
        }
    }
    if !index.contains_key(&root) {
        return Err(Error::domain("root is not among the vertices"));
    }
    Ok(ComponentGraph {
        mode,
        root,
        index_set: base.sys().index_set().to_vec(),
        vertices,
        index,
        edges,
        loops,
    })
}

/// Decide whether some isomorphism of components maps `u` to `v`.
///
/// Simultaneous traversal pairing `(u, v)`: each visited pair must agree on
/// weight and on every statistic (hence on loops), and on the definedness
/// pattern of both operators; the pairing extends along every defined
/// operator and any conflict decides non-isomorphism immediately. On a
/// component generated from `u`, a homomorphism fixing `u` is uniquely
/// determined by operator commutation, and component isomorphism is exactly
/// label- and weight-preserving digraph isomorphism, so this traversal is a
/// complete decision procedure.
pub fn iso_from(
    mode: ProductMode,
    base: &QuasiCrystal,
    u: &Word,
    v: &Word,
    cap: usize,
) -> Result<bool> {
    let gu = component(mode, base, u, cap)?;
    let gv = component(mode, base, v, cap)?;
    Ok(iso_between(&gu, &gv, u, v))
}

/// The traversal core of [`iso_from`], reusing already-built components.
pub fn iso_between(gu: &ComponentGraph, gv: &ComponentGraph, u: &Word, v: &Word) -> bool {
    iso_pairing(gu, gv, u, v).is_some()
}

/// Like [`iso_between`], but on success returns the full vertex pairing
/// (indices of `gu` to indices of `gv`). The pairing is unique given the
/// seed pair, because operator edges are deterministic per label.
pub fn iso_pairing(
    gu: &ComponentGraph,
    gv: &ComponentGraph,
    u: &Word,
    v: &Word,
) -> Option<Vec<usize>> {
    if gu.vertex_count() != gv.vertex_count()
        || gu.edge_count() != gv.edge_count()
        || gu.loop_count() != gv.loop_count()
        || gu.index_set != gv.index_set
    {
        return None;
    }
    let k = gu.index_set.len();
    let adj_u = Adjacency::build(gu, k);
    let adj_v = Adjacency::build(gv, k);

    let (su, sv) = (gu.vertex_id(u)?, gv.vertex_id(v)?);
    let mut fwd: Vec<Option<usize>> = vec![None; gu.vertex_count()];
    let mut bwd: Vec<Option<usize>> = vec![None; gv.vertex_count()];
    let mut queue = VecDeque::new();

    fwd[su] = Some(sv);
    bwd[sv] = Some(su);
    queue.push_back((su, sv));

    while let Some((a, b)) = queue.pop_front() {
        let va = &gu.vertices[a];
        let vb = &gv.vertices[b];
        if va.weight != vb.weight || va.stats != vb.stats {
            return None;
        }
        for pos in 0..k {
            for (na, nb) in [
                (adj_u.out[a][pos], adj_v.out[b][pos]),
                (adj_u.inn[a][pos], adj_v.inn[b][pos]),
            ] {
                match (na, nb) {
                    (None, None) => {}
                    (Some(na), Some(nb)) => match (fwd[na], bwd[nb]) {
                        (None, None) => {
                            fwd[na] = Some(nb);
                            bwd[nb] = Some(na);
                            queue.push_back((na, nb));
                        }
                        (Some(prev), _) if prev == nb => {}
                        _ => return None,
                    },
                    _ => return None,
                }
            }
        }
    }
    // both components are connected and the counts match, so the traversal
    // paired every vertex
    debug_assert!(fwd.iter().all(Option::is_some));
    fwd.into_iter().collect()
}

struct Adjacency {
    out: Vec<Vec<Option<usize>>>,
    inn: Vec<Vec<Option<usize>>>,
}

impl Adjacency {
    fn build(g: &ComponentGraph, k: usize) -> Adjacency {
        let mut out = vec![vec![None; k]; g.vertex_count()];
        let mut inn = vec![vec![None; k]; g.vertex_count()];
        for e in &g.edges {
            let pos = g.label_pos(e.label);
            out[e.from][pos] = Some(e.to);
            inn[e.to][pos] = Some(e.from);
        }
        Adjacency { out, inn }
    }
}

/// Deterministic DOT rendering: vertices shortlex with the weight in the
/// node label, labelled edges, loops as self-edges.
pub fn export_dot(base: &QuasiCrystal, g: &ComponentGraph) -> String {
    let order = g.sorted_vertex_ids();
    let place: HashMap<usize, usize> = order.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let mut out = String::new();
    out.push_str("digraph component {\n  rankdir=LR;\n  node [shape=box];\n");
    for (slot, &v) in order.iter().enumerate() {
        let vd = &g.vertices[v];
        let text = vd.word.display(base);
        let label = if text.is_empty() { "ε" } else { &text };
        let _ = writeln!(out, "  n{slot} [label=\"{label}\\n{}\"];", vd.weight);
    }
    let mut edges: Vec<(usize, usize, usize)> = g
        .edges
        .iter()
        .map(|e| (place[&e.from], e.label, place[&e.to]))
        .collect();
    edges.sort_unstable();
    for (from, label, to) in edges {
        let _ = writeln!(out, "  n{from} -> n{to} [label=\"{label}\"];");
    }
    let mut loops: Vec<(usize, usize)> = g.loops.iter().map(|&(v, l)| (place[&v], l)).collect();
    loops.sort_unstable();
    for (v, label) in loops {
        let _ = writeln!(out, "  n{v} -> n{v} [label=\"{label}\"];");
    }
    out.push_str("}\n");
    out
}

#[derive(Serialize, Deserialize)]
struct VertexRepr {
    word: String,
    wt: Vec<i64>,
    eps: BTreeMap<String, ExtInt>,
    phi: BTreeMap<String, ExtInt>,
}

#[derive(Serialize, Deserialize)]
struct EdgeRepr {
    from: String,
    to: String,
    label: usize,
}

#[derive(Serialize, Deserialize)]
struct LoopRepr {
    vertex: String,
    label: usize,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    mode: String,
    root: String,
    vertices: Vec<VertexRepr>,
    edges: Vec<EdgeRepr>,
    loops: Vec<LoopRepr>,
}

/// Lossless JSON rendering of a graph fragment; deterministic ordering.
pub fn export_json(base: &QuasiCrystal, g: &ComponentGraph) -> String {
    let order = g.sorted_vertex_ids();
    let index_set = base.sys().index_set();
    let vertices: Vec<VertexRepr> = order
        .iter()
        .map(|&v| {
            let vd = &g.vertices[v];
            VertexRepr {
                word: vd.word.display(base),
                wt: vd.weight.coords().to_vec(),
                eps: index_set
                    .iter()
                    .zip(&vd.stats)
                    .map(|(i, s)| (i.to_string(), s.0))
                    .collect(),
                phi: index_set
                    .iter()
                    .zip(&vd.stats)
                    .map(|(i, s)| (i.to_string(), s.1))
                    .collect(),
            }
        })
        .collect();
    let mut edges: Vec<EdgeRepr> = g
        .edges
        .iter()
        .map(|e| EdgeRepr {
            from: g.vertices[e.from].word.display(base),
            to: g.vertices[e.to].word.display(base),
            label: e.label,
        })
        .collect();
    edges.sort_by(|a, b| (&a.from, a.label, &a.to).cmp(&(&b.from, b.label, &b.to)));
    let mut loops: Vec<LoopRepr> = g
        .loops
        .iter()
        .map(|&(v, label)| LoopRepr {
            vertex: g.vertices[v].word.display(base),
            label,
        })
        .collect();
    loops.sort_by(|a, b| (&a.vertex, a.label).cmp(&(&b.vertex, b.label)));
    let repr = GraphRepr {
        mode: g.mode.as_str().to_string(),
        root: g.root.display(base),
        vertices,
        edges,
        loops,
    };
    let mut text = serde_json::to_string_pretty(&repr).expect("graph serialization");
    text.push('\n');
    text
}

/// Parse a graph fragment back from its JSON rendering.
pub fn import_json(base: &QuasiCrystal, text: &str) -> Result<ComponentGraph> {
    let repr: GraphRepr = serde_json::from_str(text)?;
    let mode: ProductMode = repr.mode.parse()?;
    let index_set = base.sys().index_set().to_vec();
    let mut vertices = Vec::with_capacity(repr.vertices.len());
    let mut index = HashMap::with_capacity(repr.vertices.len());
    for v in &repr.vertices {
        let word = Word::parse(base, &v.word)?;
        let mut stats = Vec::with_capacity(index_set.len());
        for i in &index_set {
            let key = i.to_string();
            let eps = v
                .eps
                .get(&key)
                .ok_or_else(|| Error::parse(format!("vertex {:?} misses eps[{i}]", v.word)))?;
            let phi = v
                .phi
                .get(&key)
                .ok_or_else(|| Error::parse(format!("vertex {:?} misses phi[{i}]", v.word)))?;
            stats.push((*eps, *phi));
        }
        if index.insert(word.clone(), vertices.len()).is_some() {
            return Err(Error::parse(format!("duplicate vertex {:?}", v.word)));
        }
        vertices.push(VertexData {
            word,
            weight: Weight::new(v.wt.clone()),
            stats,
        });
    }
    let resolve = |name: &str| -> Result<usize> {
        let word = Word::parse(base, name)?;
        index
            .get(&word)
            .copied()
            .ok_or_else(|| Error::parse(format!("edge endpoint {name:?} is not a vertex")))
    };
    let mut edges = Vec::with_capacity(repr.edges.len());
    for e in &repr.edges {
        if !index_set.contains(&e.label) {
            return Err(Error::parse(format!("edge label {} outside index set", e.label)));
        }
        edges.push(Edge {
            from: resolve(&e.from)?,
            to: resolve(&e.to)?,
            label: e.label,
        });
    }
    let mut loops = Vec::with_capacity(repr.loops.len());
    for l in &repr.loops {
        if !index_set.contains(&l.label) {
            return Err(Error::parse(format!("loop label {} outside index set", l.label)));
        }
        loops.push((resolve(&l.vertex)?, l.label));
    }
    let root = Word::parse(base, &repr.root)?;
    if !index.contains_key(&root) {
        return Err(Error::parse("root is not among the vertices".to_string()));
    }
    Ok(ComponentGraph {
        mode,
        root,
        index_set,
        vertices,
        index,
        edges,
        loops,
    })
}
