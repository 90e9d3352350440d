//! Plumbing graphs and the blow-up/blow-down calculus.
//!
//! A vertex is a circle bundle (Euler number, base genus) and an edge is a
//! plumbing. The first vertex of a graph is its central vertex; star-shaped
//! graphs hang linear branches off it.
//!
//! [`normalize_to_standard`] turns the star with positive leaves `p_i` into the
//! non-positive standard diagram: central vertex `n - k`, branch `i` a chain of
//! `p_i - 1` vertices of Euler number `-2`. The move transcript it returns
//! replays exactly from [`star_from_seifert`].

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::{self, Write as _};

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::exact::{self, Rational};
use crate::homology::IntegerMatrix;
use crate::seifert::{SeifertError, SeifertInvariants};

pub const CENTER_ID: &str = "c";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlumbingError {
    #[error(transparent)]
    Seifert(#[from] SeifertError),
    #[error("multiplicity {0} does not fit the graph's Euler number range")]
    OutOfRange(u64),
    #[error("duplicate vertex id {0:?}")]
    DuplicateVertex(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("self-loop at vertex {0:?}")]
    SelfLoop(String),
    #[error("graph is not connected")]
    Disconnected,
    #[error("no edge between {0:?} and {1:?}")]
    MissingEdge(String, String),
    #[error("cannot blow down {id:?}: {reason}")]
    BlowDown { id: String, reason: String },
    #[error("graph is not star-shaped: {0}")]
    NotStar(String),
    #[error("degenerate chain: zero denominator while evaluating {0}")]
    DegenerateChain(Chain),
    #[error("branch {0} has continued fraction 0")]
    ZeroBranch(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Vertex {
    pub id: String,
    pub euler: i64,
    pub genus: u32,
}

impl Vertex {
    pub fn new(id: impl Into<String>, euler: i64, genus: u32) -> Self {
        Vertex { id: id.into(), euler, genus }
    }
}

/// Unordered vertex pair, stored with the smaller id first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(String, String);

impl Edge {
    pub fn new(a: impl Into<String>, b: impl Into<String>) -> Self {
        let (a, b) = (a.into(), b.into());
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn ends(&self) -> (&str, &str) {
        (&self.0, &self.1)
    }

    pub fn touches(&self, id: &str) -> bool {
        self.0 == id || self.1 == id
    }

    /// The end that is not `id`.
    pub fn other(&self, id: &str) -> &str {
        if self.0 == id {
            &self.1
        } else {
            &self.0
        }
    }
}

impl Serialize for Edge {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [&self.0, &self.1].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Edge {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [a, b] = <[String; 2]>::deserialize(d)?;
        Ok(Edge::new(a, b))
    }
}

/// Vertices in a fixed order (central vertex first) and a sorted edge multiset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlumbingGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
}

impl PlumbingGraph {
    pub fn new(vertices: Vec<Vertex>, edges: Vec<Edge>) -> Result<Self, PlumbingError> {
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v.id.as_str()) {
                return Err(PlumbingError::DuplicateVertex(v.id.clone()));
            }
        }
        for e in &edges {
            for end in [&e.0, &e.1] {
                if !seen.contains(end.as_str()) {
                    return Err(PlumbingError::UnknownVertex(end.clone()));
                }
            }
            if e.0 == e.1 {
                return Err(PlumbingError::SelfLoop(e.0.clone()));
            }
        }
        let mut g = PlumbingGraph { vertices, edges };
        g.edges.sort();
        if !g.is_connected() {
            return Err(PlumbingError::Disconnected);
        }
        Ok(g)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn center(&self) -> Option<&Vertex> {
        self.vertices.first()
    }

    pub fn vertex(&self, id: &str) -> Option<&Vertex> {
        self.vertices.iter().find(|v| v.id == id)
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    pub fn degree(&self, id: &str) -> usize {
        self.edges.iter().filter(|e| e.touches(id)).count()
    }

    /// Neighbors with multiplicity, in vertex order.
    pub fn neighbors(&self, id: &str) -> Vec<&str> {
        let mut out: Vec<&str> =
            self.edges.iter().filter(|e| e.touches(id)).map(|e| e.other(id)).collect();
        out.sort_by_key(|n| self.index_of(n));
        out
    }

    fn vertex_mut(&mut self, id: &str) -> &mut Vertex {
        self.vertices.iter_mut().find(|v| v.id == id).expect("vertex exists")
    }

    fn is_connected(&self) -> bool {
        let Some(start) = self.vertices.first() else { return true };
        let mut seen = BTreeSet::from([start.id.as_str()]);
        let mut queue = VecDeque::from([start.id.as_str()]);
        while let Some(v) = queue.pop_front() {
            for e in self.edges.iter().filter(|e| e.touches(v)) {
                let w = e.other(v);
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen.len() == self.vertices.len()
    }

    /// First unused id of the form `x1`, `x2`, ...
    fn fresh_id(&self) -> String {
        (1..)
            .map(|n| format!("x{n}"))
            .find(|id| self.vertex(id).is_none())
            .expect("unbounded")
    }

    /// Branches of a star-shaped graph as Euler-number chains read outward
    /// from the center, ordered by the position of their first vertex.
    pub fn branches(&self) -> Result<Vec<Chain>, PlumbingError> {
        Ok(self.branch_ids()?.iter().map(|ids| self.chain_of(ids)).collect())
    }

    fn chain_of(&self, ids: &[&str]) -> Chain {
        Chain(ids.iter().map(|id| self.vertex(id).expect("vertex").euler).collect())
    }

    /// Vertex ids of each branch. A star is a tree in which every vertex other
    /// than the center has valence at most two.
    pub fn branch_ids(&self) -> Result<Vec<Vec<&str>>, PlumbingError> {
        let center = self.center().ok_or_else(|| PlumbingError::NotStar("empty graph".into()))?;
        if self.edges.len() + 1 != self.vertices.len() {
            return Err(PlumbingError::NotStar("graph is not a tree".into()));
        }
        if let Some(v) = self.vertices[1..].iter().find(|v| self.degree(&v.id) > 2) {
            return Err(PlumbingError::NotStar(format!("vertex {:?} has valence > 2", v.id)));
        }
        let mut branches = Vec::new();
        for first in self.neighbors(&center.id) {
            let mut chain = vec![first];
            let mut prev = center.id.as_str();
            let mut cur = first;
            loop {
                let next: Vec<&str> = self.neighbors(cur).into_iter().filter(|&n| n != prev).collect();
                match next.as_slice() {
                    [] => break,
                    [n] => {
                        chain.push(n);
                        prev = cur;
                        cur = n;
                    }
                    _ => unreachable!("valence checked above"),
                }
            }
            branches.push(chain);
        }
        Ok(branches)
    }

    /// DOT rendering with `e=<euler>, g=<genus>` vertex labels.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph plumbing {\n");
        for v in &self.vertices {
            writeln!(out, "  \"{}\" [label=\"e={}, g={}\"];", v.id, v.euler, v.genus).unwrap();
        }
        for Edge(a, b) in &self.edges {
            writeln!(out, "  \"{a}\" -- \"{b}\";").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDoc {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
}

impl Serialize for PlumbingGraph {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GraphDoc { vertices: self.vertices.clone(), edges: self.edges.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PlumbingGraph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let doc = GraphDoc::deserialize(d)?;
        PlumbingGraph::new(doc.vertices, doc.edges).map_err(serde::de::Error::custom)
    }
}

/// Euler numbers along a linear branch, center-adjacent first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Chain(pub Vec<i64>);

impl Chain {
    pub fn entries(&self) -> &[i64] {
        &self.0
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// `[a_1, ..., a_s] = a_1 - 1/(a_2 - 1/(... - 1/a_s))`.
pub fn branch_continued_fraction(chain: &Chain) -> Result<Rational, PlumbingError> {
    let mut entries = chain.0.iter().rev();
    let Some(&last) = entries.next() else {
        return Err(PlumbingError::DegenerateChain(chain.clone()));
    };
    let mut value = exact::integer(last);
    for &a in entries {
        if value.is_zero() {
            return Err(PlumbingError::DegenerateChain(chain.clone()));
        }
        value = exact::integer(a) - value.recip();
    }
    Ok(value)
}

/// `e = n_c - sum 1/c_i` over the branches of a star with genus-0 branches.
pub fn rational_euler_from_graph(graph: &PlumbingGraph) -> Result<Rational, PlumbingError> {
    let branches = graph.branch_ids()?;
    if let Some(v) = branches.iter().flatten().find(|id| graph.vertex(id).unwrap().genus > 0) {
        return Err(PlumbingError::NotStar(format!("branch vertex {v:?} has positive genus")));
    }
    let mut e = exact::integer(graph.center().unwrap().euler);
    for (i, ids) in branches.iter().enumerate() {
        let c = branch_continued_fraction(&graph.chain_of(ids))?;
        if c.is_zero() {
            return Err(PlumbingError::ZeroBranch(i));
        }
        e -= c.recip();
    }
    Ok(e)
}

/// Symmetric matrix with Euler numbers on the diagonal and edge multiplicities
/// off the diagonal, in vertex order.
pub fn linking_matrix(graph: &PlumbingGraph) -> IntegerMatrix {
    let n = graph.len();
    let index: BTreeMap<&str, usize> =
        graph.vertices.iter().enumerate().map(|(i, v)| (v.id.as_str(), i)).collect();
    let mut m = IntegerMatrix::zeros(n, n);
    for (i, v) in graph.vertices.iter().enumerate() {
        m[(i, i)] = v.euler.into();
    }
    for Edge(a, b) in &graph.edges {
        let (i, j) = (index[a.as_str()], index[b.as_str()]);
        m[(i, j)] += 1;
        m[(j, i)] += 1;
    }
    m
}

/// Center `(n, g)` joined to leaves `(p_i, 0)` labelled `v1..vk`.
pub fn star_from_seifert(inv: &SeifertInvariants) -> Result<PlumbingGraph, PlumbingError> {
    let ps = inv.multiplicities()?;
    let mut vertices = vec![Vertex::new(CENTER_ID, inv.euler(), inv.genus())];
    let mut edges = Vec::with_capacity(ps.len());
    for (i, &p) in ps.iter().enumerate() {
        let euler = i64::try_from(p).map_err(|_| PlumbingError::OutOfRange(p))?;
        let id = format!("v{}", i + 1);
        edges.push(Edge::new(CENTER_ID, id.clone()));
        vertices.push(Vertex::new(id, euler, 0));
    }
    PlumbingGraph::new(vertices, edges)
}

/// Replaces the edge `a - b` by `a - x - b` with a fresh `(-1, g=0)` vertex `x`
/// and lowers the Euler numbers of `a` and `b` by one.
pub fn blow_up_edge(graph: &PlumbingGraph, edge: &Edge) -> Result<PlumbingGraph, PlumbingError> {
    Ok(blow_up_edge_named(graph, edge)?.0)
}

fn blow_up_edge_named(graph: &PlumbingGraph, edge: &Edge) -> Result<(PlumbingGraph, String), PlumbingError> {
    let pos = graph
        .edges
        .iter()
        .position(|e| e == edge)
        .ok_or_else(|| PlumbingError::MissingEdge(edge.0.clone(), edge.1.clone()))?;
    let mut g = graph.clone();
    let fresh = g.fresh_id();
    g.edges.remove(pos);
    g.vertex_mut(&edge.0).euler -= 1;
    g.vertex_mut(&edge.1).euler -= 1;
    g.edges.push(Edge::new(edge.0.clone(), fresh.clone()));
    g.edges.push(Edge::new(fresh.clone(), edge.1.clone()));
    g.edges.sort();
    g.vertices.push(Vertex::new(fresh.clone(), -1, 0));
    Ok((g, fresh))
}

/// Removes a genus-0 vertex of Euler number `e = +-1` and valence at most two.
/// Each neighbor's Euler number changes by `-e`; two neighbors get joined.
pub fn blow_down(graph: &PlumbingGraph, id: &str) -> Result<PlumbingGraph, PlumbingError> {
    let refuse = |reason: String| PlumbingError::BlowDown { id: id.to_string(), reason };
    let v = graph.vertex(id).ok_or_else(|| PlumbingError::UnknownVertex(id.to_string()))?;
    if v.genus > 0 {
        return Err(refuse(format!("genus {} > 0", v.genus)));
    }
    if v.euler.abs() != 1 {
        return Err(refuse(format!("Euler number {} is not +-1", v.euler)));
    }
    let neighbors: Vec<String> = graph.neighbors(id).into_iter().map(String::from).collect();
    if neighbors.len() > 2 {
        return Err(refuse(format!("valence {} > 2", neighbors.len())));
    }
    if let [a, b] = neighbors.as_slice() {
        if a == b {
            return Err(refuse(format!("double edge to {a:?}")));
        }
    }
    let eps = v.euler;
    let mut g = graph.clone();
    g.vertices.retain(|w| w.id != id);
    g.edges.retain(|e| !e.touches(id));
    for n in &neighbors {
        g.vertex_mut(n).euler -= eps;
    }
    if let [a, b] = neighbors.as_slice() {
        g.edges.push(Edge::new(a.clone(), b.clone()));
        g.edges.sort();
    }
    Ok(g)
}

/// One calculus move, written to JSON as `{"move": ..., "target": ...}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "move", content = "target", rename_all = "snake_case", deny_unknown_fields)]
pub enum Move {
    BlowUpEdge(Edge),
    BlowDown(String),
}

impl Move {
    pub fn apply(&self, graph: &PlumbingGraph) -> Result<PlumbingGraph, PlumbingError> {
        match self {
            Move::BlowUpEdge(e) => blow_up_edge(graph, e),
            Move::BlowDown(id) => blow_down(graph, id),
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::BlowUpEdge(Edge(a, b)) => write!(f, "blow up {a} -- {b}"),
            Move::BlowDown(id) => write!(f, "blow down {id}"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Transcript(pub Vec<Move>);

impl Transcript {
    pub fn moves(&self) -> &[Move] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn replay(&self, start: &PlumbingGraph) -> Result<PlumbingGraph, PlumbingError> {
        self.0.iter().try_fold(start.clone(), |g, m| m.apply(&g))
    }

    /// The starting graph followed by the graph after every move.
    pub fn trace(&self, start: &PlumbingGraph) -> Result<Vec<PlumbingGraph>, PlumbingError> {
        let mut out = vec![start.clone()];
        for m in &self.0 {
            let next = m.apply(out.last().unwrap())?;
            out.push(next);
        }
        Ok(out)
    }
}

/// Output of [`normalize_to_standard`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Normalized {
    pub graph: PlumbingGraph,
    pub transcript: Transcript,
}

struct Recorder {
    graph: PlumbingGraph,
    moves: Vec<Move>,
}

impl Recorder {
    fn blow_up(&mut self, a: &str, b: &str) -> String {
        let edge = Edge::new(a, b);
        let (g, fresh) = blow_up_edge_named(&self.graph, &edge).expect("edge present");
        self.graph = g;
        self.moves.push(Move::BlowUpEdge(edge));
        fresh
    }

    fn blow_down(&mut self, id: &str) {
        self.graph = blow_down(&self.graph, id).expect("blow-down precondition");
        self.moves.push(Move::BlowDown(id.to_string()));
    }

    fn euler(&self, id: &str) -> i64 {
        self.graph.vertex(id).expect("vertex").euler
    }
}

/// Normal form of the positive-leaf star of an eligible tuple.
///
/// 1. blow down every `+1` leaf (`p_i = 1`), lowering the center by one each;
/// 2. blow up every center-leaf edge, giving branches `(n-k; -1, p_i-1)`;
/// 3. on each branch blow up the edge between the `-1` and the leaf until the
///    leaf reaches `+1`, then blow the leaf down.
///
/// Branch `i` ends as `p_i - 1` vertices of Euler number `-2` and the center
/// as `n' - k'`.
pub fn normalize_to_standard(inv: &SeifertInvariants) -> Result<Normalized, PlumbingError> {
    let start = star_from_seifert(inv)?;
    let mut rec = Recorder { graph: start, moves: Vec::new() };

    let leaves: Vec<String> = rec.graph.vertices[1..].iter().map(|v| v.id.clone()).collect();
    let mut kept = Vec::new();
    for leaf in leaves {
        if rec.euler(&leaf) == 1 {
            rec.blow_down(&leaf);
        } else {
            kept.push(leaf);
        }
    }

    let tails: Vec<String> = kept.iter().map(|leaf| rec.blow_up(CENTER_ID, leaf)).collect();

    for (leaf, mut tail) in kept.iter().zip(tails) {
        while rec.euler(leaf) > 1 {
            tail = rec.blow_up(&tail, leaf);
        }
        rec.blow_down(leaf);
    }

    Ok(Normalized { graph: rec.graph, transcript: Transcript(rec.moves) })
}

/// Star-shaped with every non-central vertex of genus 0 and Euler number at
/// most `-2`, and `n_c + k <= 0` for central Euler number `n_c` and `k`
/// branches.
pub fn is_nonpositive_standard(graph: &PlumbingGraph) -> bool {
    let Ok(branches) = graph.branch_ids() else { return false };
    let center = graph.center().expect("star has a center");
    let leaves_ok = graph.vertices[1..].iter().all(|v| v.genus == 0 && v.euler <= -2);
    leaves_ok && center.euler + branches.len() as i64 <= 0
}
