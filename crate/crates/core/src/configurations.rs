//! Classification of deficient residual graphs `G' = G - e - S_e` into the
//! named configuration families, and the neighbourhood predicates that
//! each configuration implies in the ambient graph.
//!
//! A residual is a graph of order 6 (families A and C) or 8 (family B) with
//! a designated non-adjacent pair `u, v` such that `G'` has no perfect
//! matching but `G' + uv` does. Classification looks at a minimum Tutte set
//! `X` of `G'`: the sizes of the components of `G' - X` and where `u` and
//! `v` sit among them.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::criticality::{minimality_certificate, CriticalityError};
use crate::graph::{ComponentPartition, Graph, GraphError, VertexSet};
use crate::matching::{
    enumerate_perfect_matchings, has_perfect_matching, tutte_violators, Matching, TutteMode,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("residual has a perfect matching")]
    NotDeficient,
    #[error("residual plus the designated edge has no perfect matching")]
    NotRestorable,
    #[error("family precondition unmet: {0}")]
    FamilyPreconditionUnmet(String),
    #[error("ambient hypothesis unmet: {0}")]
    HypothesisUnmet(String),
    #[error("match does not describe this edge and witness: {0}")]
    RoleMismatch(String),
    #[error("graph is not minimally {k}-factor-critical")]
    NotMinimallyCritical { k: usize },
    #[error(transparent)]
    Criticality(#[from] CriticalityError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
}

impl Family {
    pub fn residual_order(self) -> usize {
        match self {
            Family::A | Family::C => 6,
            Family::B => 8,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Label {
    A1,
    A2,
    A3,
    B1,
    B2,
    B3,
    B4,
    B5,
    B6,
    B7,
    B8,
    C1,
    C2,
    /// Two trivial components joined by the edge plus one 3-vertex
    /// component, in family C.
    #[serde(rename = "C2'")]
    C2Prime,
    C3,
    C4,
    Unclassified,
}

impl Label {
    pub const ALL: [Label; 17] = [
        Label::A1,
        Label::A2,
        Label::A3,
        Label::B1,
        Label::B2,
        Label::B3,
        Label::B4,
        Label::B5,
        Label::B6,
        Label::B7,
        Label::B8,
        Label::C1,
        Label::C2,
        Label::C2Prime,
        Label::C3,
        Label::C4,
        Label::Unclassified,
    ];

    pub fn family(self) -> Option<Family> {
        use Label::*;
        match self {
            A1 | A2 | A3 => Some(Family::A),
            B1 | B2 | B3 | B4 | B5 | B6 | B7 | B8 => Some(Family::B),
            C1 | C2 | C2Prime | C3 | C4 => Some(Family::C),
            Unclassified => None,
        }
    }

    pub fn name(self) -> &'static str {
        use Label::*;
        match self {
            A1 => "A1",
            A2 => "A2",
            A3 => "A3",
            B1 => "B1",
            B2 => "B2",
            B3 => "B3",
            B4 => "B4",
            B5 => "B5",
            B6 => "B6",
            B7 => "B7",
            B8 => "B8",
            C1 => "C1",
            C2 => "C2",
            C2Prime => "C2'",
            C3 => "C3",
            C4 => "C4",
            Unclassified => "Unclassified",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Shape of one side of a C1 residual: the 3-vertex component holding an
/// endpoint of the designated edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum C1Side {
    Triangle,
    /// A path with the endpoint in the middle.
    PathCentre,
    /// A path with the endpoint at one end.
    PathEnd,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidualInstance {
    pub gprime: Graph,
    pub u: usize,
    pub v: usize,
    pub family: Family,
}

impl ResidualInstance {
    fn validate(&self) -> Result<(), ConfigError> {
        let g = &self.gprime;
        g.check_vertex(self.u)?;
        g.check_vertex(self.v)?;
        if self.u == self.v {
            return Err(GraphError::Loop(self.u).into());
        }
        if g.has_edge(self.u, self.v) {
            return Err(GraphError::EdgePresent(self.u, self.v).into());
        }
        let want = self.family.residual_order();
        if g.order() != want {
            return Err(ConfigError::FamilyPreconditionUnmet(format!(
                "family {} needs order {want}, residual has order {}",
                self.family,
                g.order()
            )));
        }
        if has_perfect_matching(g) {
            return Err(ConfigError::NotDeficient);
        }
        let plus = self.restored();
        if !has_perfect_matching(&plus) {
            return Err(ConfigError::NotRestorable);
        }
        match self.family {
            Family::A | Family::B if plus.min_degree() < 2 => {
                Err(ConfigError::FamilyPreconditionUnmet(format!(
                    "residual plus edge has a vertex of degree {}",
                    plus.min_degree()
                )))
            }
            Family::C if g.min_degree() < 1 => Err(ConfigError::FamilyPreconditionUnmet(
                "residual has an isolated vertex".into(),
            )),
            _ => Ok(()),
        }
    }

    fn restored(&self) -> Graph {
        let mut plus = self.gprime.clone();
        plus.set_edge(self.u, self.v);
        plus
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigurationMatch {
    pub label: Label,
    pub family: Family,
    /// The minimum Tutte set the label was read from.
    pub x: VertexSet,
    /// Components of `G' - X`.
    pub partition: ComponentPartition,
    /// Role name to residual vertex; empty when unclassified.
    pub roles: BTreeMap<String, usize>,
    /// Set when another minimum Tutte set gives a different label.
    pub ambiguity_flag: bool,
    /// Shapes of the two sides of a C1 residual, `u` side first.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub c1_sides: Option<[C1Side; 2]>,
}

impl ConfigurationMatch {
    pub fn role(&self, name: &str) -> Option<usize> {
        self.roles.get(name).copied()
    }
}

/// What one choice of `X` says about the residual.
struct Reading {
    label: Label,
    roles: Vec<(&'static str, usize)>,
    c1_sides: Option<[C1Side; 2]>,
}

impl Reading {
    fn unclassified() -> Self {
        Reading {
            label: Label::Unclassified,
            roles: Vec::new(),
            c1_sides: None,
        }
    }
}

/// Components of `G' - X` sorted out relative to the designated pair.
struct Layout<'a> {
    g: &'a Graph,
    u: usize,
    v: usize,
    x: Vec<usize>,
    cu: VertexSet,
    cv: VertexSet,
    /// Odd components holding neither endpoint, trivial ones first, then by
    /// size and smallest member.
    others: Vec<VertexSet>,
    even: Vec<VertexSet>,
    m: Matching,
}

impl<'a> Layout<'a> {
    fn new(g: &'a Graph, plus: &Graph, u: usize, v: usize, x: VertexSet, p: &ComponentPartition) -> Self {
        let cu = p.blocks[p.block_of(u).expect("u survives")];
        let cv = p.blocks[p.block_of(v).expect("v survives")];
        let mut others: Vec<VertexSet> = p
            .odd_blocks()
            .filter(|b| !b.contains(u) && !b.contains(v))
            .collect();
        others.sort_by_key(|b| (b.len(), VertexSet::min(*b)));
        let even = p.even_blocks().collect();
        let m = enumerate_perfect_matchings(plus, 1)
            .matchings
            .into_iter()
            .next()
            .expect("restorable residual has a perfect matching");
        Layout {
            g,
            u,
            v,
            x: x.to_vec(),
            cu,
            cv,
            others,
            even,
            m,
        }
    }

    fn sizes(&self) -> Vec<usize> {
        self.others.iter().map(|b| b.len()).collect()
    }

    fn even_sizes(&self) -> Vec<usize> {
        self.even.iter().map(|b| b.len()).collect()
    }

    fn trivial_others(&self) -> Vec<usize> {
        self.others
            .iter()
            .filter(|b| b.len() == 1)
            .flat_map(|b| b.iter())
            .collect()
    }

    fn partner(&self, w: usize) -> usize {
        self.m
            .edges()
            .iter()
            .find_map(|&(a, b)| {
                if a == w {
                    Some(b)
                } else if b == w {
                    Some(a)
                } else {
                    None
                }
            })
            .expect("perfect matching covers every vertex")
    }

    /// Endpoints ordered so that the one satisfying `first` comes first,
    /// ties going to the instance's own order.
    fn orient(&self, first: impl Fn(VertexSet) -> bool) -> (usize, VertexSet, usize, VertexSet) {
        if first(self.cu) || !first(self.cv) {
            (self.u, self.cu, self.v, self.cv)
        } else {
            (self.v, self.cv, self.u, self.cu)
        }
    }

    fn is_clique(&self, set: VertexSet) -> bool {
        set.iter().all(|w| (set.without(w)).is_subset(self.g.neighbors(w)))
    }

    /// Two vertices of `X` that `a` and `b` can be matched to, `a`'s first,
    /// lexicographically first.
    fn x_pair_for(&self, a: usize, b: usize) -> Option<(usize, usize)> {
        for &p in &self.x {
            for &q in &self.x {
                if p != q && self.g.has_edge(a, p) && self.g.has_edge(b, q) {
                    return Some((p, q));
                }
            }
        }
        None
    }

    fn c1_side(&self, end: usize, comp: VertexSet) -> C1Side {
        if self.is_clique(comp) {
            C1Side::Triangle
        } else if (self.g.neighbors(end) & comp).len() == 2 {
            C1Side::PathCentre
        } else {
            C1Side::PathEnd
        }
    }
}

fn rest(set: VertexSet, drop: usize) -> Vec<usize> {
    set.without(drop).to_vec()
}

fn read(family: Family, l: &Layout) -> Reading {
    let (cu, cv) = (l.cu.len(), l.cv.len());
    let trivial_pair = cu == 1 && cv == 1;
    let one_trivial = (cu == 1) != (cv == 1);
    let mut roles: Vec<(&'static str, usize)> = Vec::new();
    let mut c1_sides = None;
    let label = match (family, l.x.len()) {
        (Family::A, 0) if cu == 3 && cv == 3 && l.others.is_empty() && l.even.is_empty() => {
            if !l.is_clique(l.cu) || !l.is_clique(l.cv) {
                return Reading::unclassified();
            }
            let (a, b) = (rest(l.cu, l.u), rest(l.cv, l.v));
            roles.extend([("u", l.u), ("u1", a[0]), ("u2", a[1])]);
            roles.extend([("v", l.v), ("u3", b[0]), ("u4", b[1])]);
            Label::A1
        }
        (Family::A, 1) if trivial_pair && l.sizes() == [3] && l.even.is_empty() => {
            let xv = l.x[0];
            let v1 = l.partner(xv);
            let comp = l.others[0].without(v1).to_vec();
            roles.extend([("x", xv), ("u", l.u), ("v", l.v)]);
            roles.extend([("v1", v1), ("v2", comp[0]), ("v3", comp[1])]);
            Label::A2
        }
        (Family::A, 2) if trivial_pair && l.sizes() == [1, 1] && l.even.is_empty() => {
            let Some((xu, xv)) = l.x_pair_for(l.u, l.v) else {
                return Reading::unclassified();
            };
            let w = l.trivial_others();
            roles.extend([("x", xu), ("y", xv), ("u", l.u), ("v", l.v)]);
            roles.extend([("w1", w[0]), ("w2", w[1])]);
            Label::A3
        }
        (Family::B, 0) if l.others.is_empty() && l.even.is_empty() && cu + cv == 8 && cu.min(cv) == 3 => {
            let (u, cu, v, cv) = l.orient(|c| c.len() == 3);
            if !l.is_clique(cu) {
                return Reading::unclassified();
            }
            let a = rest(cu, u);
            // the five-vertex side minus v is matched internally
            let mut pairs: Vec<(usize, usize)> = l
                .m
                .edges()
                .iter()
                .copied()
                .filter(|&(p, q)| cv.contains(p) && cv.contains(q))
                .collect();
            pairs.sort_unstable();
            roles.extend([("u", u), ("u1", a[0]), ("u2", a[1]), ("v", v)]);
            roles.extend([("u3", pairs[0].0), ("u4", pairs[0].1)]);
            roles.extend([("u5", pairs[1].0), ("u6", pairs[1].1)]);
            Label::B1
        }
        (Family::B, 1) if trivial_pair && l.sizes() == [3] && l.even_sizes() == [2] => {
            roles.extend([("a", l.x[0]), ("u", l.u), ("v", l.v)]);
            let names = ["v1", "v2", "v3", "v4", "v5"];
            let members = l.others[0].iter().chain(l.even[0].iter());
            roles.extend(names.into_iter().zip(members));
            Label::B2
        }
        (Family::B, 1) if trivial_pair && l.sizes() == [5] && l.even.is_empty() => {
            roles.extend([("a", l.x[0]), ("u", l.u), ("v", l.v)]);
            let names = ["v1", "v2", "v3", "v4", "v5"];
            roles.extend(names.into_iter().zip(l.others[0].iter()));
            Label::B3
        }
        (Family::B, 1) if one_trivial && cu.max(cv) == 3 && l.sizes() == [3] && l.even.is_empty() => {
            let (u, _, v, cv) = l.orient(|c| c.len() == 1);
            let far = l.others[0];
            if (l.g.neighbors(l.x[0]) & far).is_empty() {
                return Reading::unclassified();
            }
            let near = rest(cv, v);
            let far = far.to_vec();
            roles.extend([("u", u), ("v", v), ("x1", near[0]), ("x2", near[1]), ("a", l.x[0])]);
            roles.extend([("x3", far[0]), ("x4", far[1]), ("x5", far[2])]);
            Label::B4
        }
        (Family::B, 2) if trivial_pair && l.sizes() == [1, 1] && l.even_sizes() == [2] => {
            let (a1, a2) = x_pair_near(l, l.u);
            let y = l.trivial_others();
            let pair = l.even[0].to_vec();
            roles.extend([("a1", a1), ("a2", a2), ("u", l.u), ("v", l.v)]);
            roles.extend([("y1", y[0]), ("y2", y[1]), ("y3", pair[0]), ("y4", pair[1])]);
            Label::B5
        }
        (Family::B, 2) if trivial_pair && l.sizes() == [1, 3] && l.even.is_empty() => {
            let z = l.others[1].to_vec();
            roles.extend([("b1", l.x[0]), ("b2", l.x[1]), ("u", l.u), ("v", l.v)]);
            roles.extend([("z1", l.others[0].min().unwrap())]);
            roles.extend([("z2", z[0]), ("z3", z[1]), ("z4", z[2])]);
            Label::B6
        }
        (Family::B, 2) if one_trivial && cu.max(cv) == 3 && l.sizes() == [1, 1] && l.even.is_empty() => {
            let (u, _, v, cv) = l.orient(|c| c.len() == 1);
            let (c1, c2) = x_pair_near(l, u);
            let p = l.trivial_others();
            let near = rest(cv, v);
            // p3 is a neighbour of v
            let (p3, p4) = if l.g.has_edge(v, near[0]) {
                (near[0], near[1])
            } else {
                (near[1], near[0])
            };
            roles.extend([("c1", c1), ("c2", c2), ("u", u), ("v", v)]);
            roles.extend([("p1", p[0]), ("p2", p[1]), ("p3", p3), ("p4", p4)]);
            Label::B7
        }
        (Family::B, 3) if trivial_pair && l.sizes() == [1, 1, 1] && l.even.is_empty() => {
            let w = l.trivial_others();
            roles.extend([("a1", l.x[0]), ("a2", l.x[1]), ("a3", l.x[2]), ("u", l.u), ("v", l.v)]);
            roles.extend([("w1", w[0]), ("w2", w[1]), ("w3", w[2])]);
            Label::B8
        }
        (Family::C, 0) if cu == 3 && cv == 3 && l.others.is_empty() && l.even.is_empty() => {
            let (a, b) = (rest(l.cu, l.u), rest(l.cv, l.v));
            roles.extend([("u", l.u), ("u1", a[0]), ("u2", a[1])]);
            roles.extend([("v", l.v), ("v1", b[0]), ("v2", b[1])]);
            c1_sides = Some([l.c1_side(l.u, l.cu), l.c1_side(l.v, l.cv)]);
            Label::C1
        }
        (Family::C, 1) if trivial_pair && l.sizes() == [1] && l.even_sizes() == [2] => {
            let pair = l.even[0].to_vec();
            roles.extend([("a", l.x[0]), ("u", l.u), ("v", l.v)]);
            roles.extend([("w", l.others[0].min().unwrap()), ("p", pair[0]), ("q", pair[1])]);
            Label::C2
        }
        (Family::C, 1) if trivial_pair && l.sizes() == [3] && l.even.is_empty() => {
            let comp = l.others[0].to_vec();
            roles.extend([("a", l.x[0]), ("u", l.u), ("v", l.v)]);
            roles.extend([("v1", comp[0]), ("v2", comp[1]), ("v3", comp[2])]);
            Label::C2Prime
        }
        (Family::C, 1) if one_trivial && cu.max(cv) == 3 && l.sizes() == [1] && l.even.is_empty() => {
            let (u, _, v, cv) = l.orient(|c| c.len() == 1);
            let near = rest(cv, v);
            roles.extend([("a", l.x[0]), ("u", u), ("v", v)]);
            roles.extend([("y1", l.others[0].min().unwrap()), ("y2", near[0]), ("y3", near[1])]);
            Label::C3
        }
        (Family::C, 2) if trivial_pair && l.sizes() == [1, 1] && l.even.is_empty() => {
            let near = l.g.neighbors(l.u) | l.g.neighbors(l.v);
            if l.x.iter().any(|&a| !near.contains(a)) {
                return Reading::unclassified();
            }
            let (a1, a2) = x_pair_near(l, l.u);
            let w = l.trivial_others();
            roles.extend([("a1", a1), ("a2", a2), ("u", l.u), ("v", l.v)]);
            roles.extend([("w1", w[0]), ("w2", w[1])]);
            Label::C4
        }
        _ => return Reading::unclassified(),
    };
    Reading {
        label,
        roles,
        c1_sides,
    }
}

/// The two vertices of a 2-element `X`, one adjacent to `w` first when
/// possible.
fn x_pair_near(l: &Layout, w: usize) -> (usize, usize) {
    let (p, q) = (l.x[0], l.x[1]);
    if !l.g.has_edge(w, p) && l.g.has_edge(w, q) {
        (q, p)
    } else {
        (p, q)
    }
}

fn build_match(
    inst: &ResidualInstance,
    plus: &Graph,
    x: VertexSet,
    partition: ComponentPartition,
) -> ConfigurationMatch {
    let layout = Layout::new(&inst.gprime, plus, inst.u, inst.v, x, &partition);
    let reading = read(inst.family, &layout);
    ConfigurationMatch {
        label: reading.label,
        family: inst.family,
        x,
        partition,
        roles: reading
            .roles
            .into_iter()
            .map(|(name, w)| (name.to_string(), w))
            .collect(),
        ambiguity_flag: false,
        c1_sides: reading.c1_sides,
    }
}

/// Labels the residual from its first minimum Tutte set, then rereads it
/// under every other minimum Tutte set; disagreement sets the ambiguity
/// flag and the smallest label wins.
pub fn classify_residual(inst: &ResidualInstance) -> Result<ConfigurationMatch, ConfigError> {
    inst.validate()?;
    let plus = inst.restored();
    let certs = tutte_violators(&inst.gprime, TutteMode::AllMinimal)
        .expect("minimum violators are always available");
    let mut matches: Vec<ConfigurationMatch> = certs
        .into_iter()
        .map(|c| build_match(inst, &plus, c.x, c.partition))
        .collect();
    let first_label = matches[0].label;
    let ambiguous = matches.iter().any(|m| m.label != first_label);
    let best = matches
        .iter()
        .enumerate()
        .min_by_key(|(i, m)| (m.label, *i))
        .map(|(i, _)| i)
        .unwrap();
    let mut chosen = matches.swap_remove(best);
    chosen.ambiguity_flag = ambiguous;
    Ok(chosen)
}

/// One checked consequence of a configuration in the ambient graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredicateCheck {
    pub name: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredicateReport {
    pub label: Label,
    /// Vertices of the ambient graph adjacent to neither endpoint.
    pub common_non_neighbours: VertexSet,
    pub checks: Vec<PredicateCheck>,
}

impl PredicateReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Degree conditions on the ambient graph under which a family's
/// predicates are claimed.
pub fn ambient_hypothesis(g: &Graph, family: Family, u: usize, v: usize) -> Result<(), ConfigError> {
    let n = g.order();
    let delta = g.min_degree();
    let unmet = |msg: String| Err(ConfigError::HypothesisUnmet(msg));
    match family {
        Family::A if delta + 4 < n => unmet(format!("minimum degree {delta} < n - 4")),
        Family::B if delta + 6 < n => unmet(format!("minimum degree {delta} < n - 6")),
        Family::C if g.degree(u).min(g.degree(v)) + 4 < n => unmet(format!(
            "endpoint degrees {} and {} not both >= n - 4",
            g.degree(u),
            g.degree(v)
        )),
        Family::C if delta + 5 < n => unmet(format!("minimum degree {delta} < n - 5")),
        _ => Ok(()),
    }
}

/// Evaluates, in `g`, the neighbourhood and degree statements attached to
/// the label of `m`, where `m` classifies `g - e - s_e`.
pub fn config_predicates(
    g: &Graph,
    e: (usize, usize),
    s_e: VertexSet,
    m: &ConfigurationMatch,
) -> Result<PredicateReport, ConfigError> {
    let d = g.delete_vertices(s_e)?;
    let role = |name: &str| -> Result<usize, ConfigError> {
        m.role(name)
            .and_then(|w| d.new_to_old.get(w).copied())
            .ok_or_else(|| ConfigError::RoleMismatch(format!("no role {name}")))
    };
    let mut report = PredicateReport {
        label: m.label,
        common_non_neighbours: VertexSet::EMPTY,
        checks: Vec::new(),
    };
    if m.label == Label::Unclassified {
        return Ok(report);
    }
    let (u, v) = (role("u")?, role("v")?);
    if (u.min(v), u.max(v)) != (e.0.min(e.1), e.0.max(e.1)) {
        return Err(ConfigError::RoleMismatch(format!(
            "roles u, v are {u}, {v} but the edge is {}{}",
            e.0, e.1
        )));
    }
    ambient_hypothesis(g, m.family, u, v)?;

    let n = g.order();
    let all = g.vertices();
    let non = |w: usize| all - g.closed_neighborhood(w);
    let common = non(u) & non(v);
    report.common_non_neighbours = common;
    let size = common.len();
    let set_of = |names: &[&str]| -> Result<VertexSet, ConfigError> {
        names.iter().map(|name| role(name)).collect()
    };
    let (du, dv) = (g.degree(u), g.degree(v));
    let mut checks: Vec<(String, bool)> = Vec::new();
    let mut check = |name: &str, pass: bool| checks.push((name.to_string(), pass));
    match m.label {
        Label::A1 => check("|I| <= 1", size <= 1),
        Label::A2 => {
            check("|I| = 3", size == 3);
            check("I = {v1,v2,v3}", common == set_of(&["v1", "v2", "v3"])?);
        }
        Label::A3 => {
            let w = set_of(&["w1", "w2"])?;
            check("|I| >= 2", size >= 2);
            check("{w1,w2} in I", w.is_subset(common));
            check("w1w2 not an edge", g.is_independent(w));
        }
        Label::B1 => check("|I| <= 3", size <= 3),
        Label::B2 | Label::B3 => check("|I| = 5", size == 5),
        Label::B4 => {
            check("3 <= |I| <= 4", (3..=4).contains(&size));
            check("N[u] complement = {x1..x5}", non(u) == set_of(&["x1", "x2", "x3", "x4", "x5"])?);
            check("{x3,x4,x5} outside N[v]", set_of(&["x3", "x4", "x5"])?.is_subset(non(v)));
            check(
                "x1 or x2 adjacent to v",
                !(g.neighbors(v) & set_of(&["x1", "x2"])?).is_empty(),
            );
        }
        Label::B5 | Label::B6 => check("|I| >= 4", size >= 4),
        Label::B7 => {
            check("2 <= |I| <= 4", (2..=4).contains(&size));
            check("{p1..p4} outside N[u]", set_of(&["p1", "p2", "p3", "p4"])?.is_subset(non(u)));
            check("{p1,p2} outside N[v]", set_of(&["p1", "p2"])?.is_subset(non(v)));
            check(
                "p3 or p4 adjacent to v",
                !(g.neighbors(v) & set_of(&["p3", "p4"])?).is_empty(),
            );
        }
        Label::B8 => {
            let w = set_of(&["w1", "w2", "w3"])?;
            check("|I| >= 3", size >= 3);
            check("{w1,w2,w3} in I", w.is_subset(common));
            check("{w1,w2,w3} independent", g.is_independent(w));
        }
        Label::C1 => {
            check("|I| <= 2", size <= 2);
            check("n-4 <= d(u), d(v) <= n-3", [du, dv].iter().all(|&d| d + 4 >= n && d + 3 <= n));
            check(
                "|N(u) & N(v)| <= n-6",
                (g.neighbors(u) & g.neighbors(v)).len() + 6 <= n,
            );
        }
        Label::C2 | Label::C2Prime => {
            check("|I| = 3", size == 3);
            check("d(u) = d(v) = n-4", du + 4 == n && dv + 4 == n);
        }
        Label::C3 => {
            let y1 = role("y1")?;
            check("1 <= |I| <= 2", (1..=2).contains(&size));
            check("d(u) = n-4", du + 4 == n);
            check("d(v) >= n-4", dv + 4 >= n);
            check("d(y1) = n-5", g.degree(y1) + 5 == n);
        }
        Label::C4 => {
            check("2 <= |I| <= 3", (2..=3).contains(&size));
            check("n-4 <= d(u), d(v) <= n-3", [du, dv].iter().all(|&d| d + 4 >= n && d + 3 <= n));
            check("{w1,w2} independent", g.is_independent(set_of(&["w1", "w2"])?));
        }
        Label::Unclassified => unreachable!(),
    }
    report.checks = checks
        .into_iter()
        .map(|(name, pass)| PredicateCheck { name, pass })
        .collect();
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum EdgeOutcome {
    Classified {
        configuration: ConfigurationMatch,
    },
    /// The edge has a residual of the right order, but neither family's
    /// precondition holds for it.
    Unclassified { reason: String },
    /// `n - k` is not 6 or 8, so no family describes the residual.
    NotApplicable { residual_order: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeCertification {
    pub edge: (usize, usize),
    pub witness: VertexSet,
    /// Residual vertex `i` is ambient vertex `residual_to_ambient[i]`.
    pub residual_to_ambient: Vec<usize>,
    pub outcome: EdgeOutcome,
}

/// For each edge of a minimally k-critical graph: its first witness and
/// the classification of the residual.
///
/// With `n - k = 6`, family C is used when both endpoints have degree at
/// least `n - 4`, otherwise family A when the residual plus the edge has
/// minimum degree two. With `n - k = 8`, family B under the same minimum
/// degree condition.
pub fn certify_minimal_edges(g: &Graph, k: usize) -> Result<Vec<EdgeCertification>, ConfigError> {
    let Some(cert) = minimality_certificate(g, k)? else {
        return Err(ConfigError::NotMinimallyCritical { k });
    };
    let n = g.order();
    let mut out = Vec::with_capacity(cert.witnesses.len());
    for (&(u, v), &witness) in &cert.witnesses {
        let d = g.delete_vertices(witness)?;
        let (nu, nv) = (d.old_to_new[u].unwrap(), d.old_to_new[v].unwrap());
        let mut gprime = d.graph.clone();
        gprime.clear_edge(nu, nv);
        let family = match n - k {
            6 if g.degree(u).min(g.degree(v)) + 4 >= n => Some(Family::C),
            6 | 8 if d.graph.min_degree() >= 2 => Some(if n - k == 6 { Family::A } else { Family::B }),
            _ => None,
        };
        let outcome = match (n - k, family) {
            (6 | 8, None) => EdgeOutcome::Unclassified {
                reason: format!(
                    "endpoint degrees {}, {} and residual minimum degree {} meet no family precondition",
                    g.degree(u),
                    g.degree(v),
                    d.graph.min_degree()
                ),
            },
            (_, None) => EdgeOutcome::NotApplicable { residual_order: n - k },
            (_, Some(family)) => {
                let inst = ResidualInstance {
                    gprime,
                    u: nu,
                    v: nv,
                    family,
                };
                match classify_residual(&inst) {
                    Ok(configuration) => EdgeOutcome::Classified { configuration },
                    Err(ConfigError::FamilyPreconditionUnmet(reason)) => {
                        EdgeOutcome::Unclassified { reason }
                    }
                    Err(other) => return Err(other),
                }
            }
        };
        out.push(EdgeCertification {
            edge: (u, v),
            witness,
            residual_to_ambient: d.new_to_old,
            outcome,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges.iter().copied()).unwrap()
    }

    fn inst(g: Graph, u: usize, v: usize, family: Family) -> ResidualInstance {
        ResidualInstance { gprime: g, u, v, family }
    }

    /// Joins every vertex of `h` to a new clique of size `s`, placed after
    /// the vertices of `h`.
    fn join_clique(h: &Graph, s: usize) -> Graph {
        let n = h.order() + s;
        let mut g = Graph::empty(n).unwrap();
        for (a, b) in h.edges() {
            g.set_edge(a, b);
        }
        for a in h.order()..n {
            for b in 0..a {
                g.set_edge(a, b);
            }
        }
        g
    }

    #[test]
    fn two_triangles_are_a1() {
        let g = graph(6, &[(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)]);
        let m = classify_residual(&inst(g, 0, 3, Family::A)).unwrap();
        assert_eq!(m.label, Label::A1);
        assert_eq!(m.x, VertexSet::EMPTY);
        assert!(!m.ambiguity_flag);
        assert_eq!(m.role("u1"), Some(1));
        assert_eq!(m.role("u4"), Some(5));
    }

    #[test]
    fn c2_example() {
        // a = 0, u = 1, v = 2, w = 3, p = 4, q = 5
        let g = graph(6, &[(0, 1), (0, 2), (0, 3), (4, 5), (0, 4)]);
        let m = classify_residual(&inst(g, 1, 2, Family::C)).unwrap();
        assert_eq!(m.label, Label::C2);
        assert_eq!(m.role("a"), Some(0));
        assert_eq!(m.role("w"), Some(3));
        assert_eq!(m.role("p"), Some(4));
    }

    #[test]
    fn instance_errors() {
        assert_eq!(
            classify_residual(&inst(cycle(6), 0, 3, Family::A)),
            Err(ConfigError::NotDeficient)
        );
        // two triangles with the pair inside one triangle's complement
        let g = graph(6, &[(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)]);
        assert_eq!(
            classify_residual(&inst(g.clone(), 0, 1, Family::A)),
            Err(ConfigError::Graph(GraphError::EdgePresent(0, 1)))
        );
        let split = graph(6, &[(0, 1), (0, 2), (1, 2), (3, 4), (4, 5)]);
        assert!(matches!(
            classify_residual(&inst(split, 0, 3, Family::A)),
            Err(ConfigError::FamilyPreconditionUnmet(_))
        ));
        assert!(matches!(
            classify_residual(&inst(g.clone(), 0, 3, Family::B)),
            Err(ConfigError::FamilyPreconditionUnmet(_))
        ));
        // four isolated vertices and an edge: joining two of them is not enough
        let h = graph(6, &[(4, 5)]);
        assert_eq!(
            classify_residual(&inst(h, 0, 1, Family::C)),
            Err(ConfigError::NotRestorable)
        );
    }

    #[test]
    fn predicates_on_an_embedded_a1() {
        let h = graph(6, &[(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)]);
        let m = classify_residual(&inst(h.clone(), 0, 3, Family::A)).unwrap();
        let mut plus = h.clone();
        plus.set_edge(0, 3);
        let g = join_clique(&plus, 3);
        let s: VertexSet = (6..9).collect();
        let r = config_predicates(&g, (0, 3), s, &m).unwrap();
        assert!(r.all_pass(), "{r:?}");
        assert_eq!(r.common_non_neighbours, VertexSet::EMPTY);
    }

    #[test]
    fn predicates_on_an_embedded_c4() {
        // X = {0, 1}; u = 2, v = 3 trivial; w1 = 4, w2 = 5
        let h = graph(6, &[(0, 2), (1, 3), (0, 4), (1, 4), (0, 5), (1, 5)]);
        let m = classify_residual(&inst(h.clone(), 2, 3, Family::C)).unwrap();
        assert_eq!(m.label, Label::C4);
        let mut plus = h.clone();
        plus.set_edge(2, 3);
        let g = join_clique(&plus, 4);
        let s: VertexSet = (6..10).collect();
        let r = config_predicates(&g, (2, 3), s, &m).unwrap();
        assert!(r.all_pass(), "{r:?}");
        assert!(r.checks.iter().any(|c| c.name == "{w1,w2} independent" && c.pass));
    }

    #[test]
    fn low_degree_ambient_is_vacuous_for_family_a() {
        let h = graph(6, &[(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)]);
        let m = classify_residual(&inst(h.clone(), 0, 3, Family::A)).unwrap();
        let mut plus = h.clone();
        plus.set_edge(0, 3);
        // vertex 9 sees only the clique, so its degree is n - 8 < n - 4
        let mut g = join_clique(&plus, 3).disjoint_union(&complete(1)).unwrap();
        for a in 6..9 {
            g.set_edge(a, 9);
        }
        let s: VertexSet = (6..10).collect();
        assert!(matches!(
            config_predicates(&g, (0, 3), s, &m),
            Err(ConfigError::HypothesisUnmet(_))
        ));
    }

    #[test]
    fn certification_examples() {
        let certs = certify_minimal_edges(&complete(6), 4).unwrap();
        assert_eq!(certs.len(), 15);
        assert!(certs
            .iter()
            .all(|c| c.outcome == EdgeOutcome::NotApplicable { residual_order: 2 }));
        let c5 = certify_minimal_edges(&cycle(5), 1).unwrap();
        assert_eq!(c5.len(), 5);
        assert_eq!(c5[0].witness, VertexSet::singleton(2));
        assert_eq!(
            certify_minimal_edges(&complete(8), 2),
            Err(ConfigError::NotMinimallyCritical { k: 2 })
        );
    }

    #[test]
    fn wheel_edges_all_get_witnesses() {
        let w7 = wheel(7);
        let certs = certify_minimal_edges(&w7, 2).unwrap();
        assert_eq!(certs.len(), w7.edge_count());
        for c in &certs {
            match &c.outcome {
                EdgeOutcome::Classified { configuration } => {
                    assert!(configuration.label.family().is_some());
                }
                EdgeOutcome::Unclassified { .. } => {}
                EdgeOutcome::NotApplicable { .. } => panic!("n - k = 6 is covered"),
            }
        }
    }

    #[test]
    fn labels_serialize_by_name() {
        assert_eq!(serde_json::to_string(&Label::C2Prime).unwrap(), "\"C2'\"");
        assert_eq!(serde_json::to_string(&Label::B7).unwrap(), "\"B7\"");
        for l in Label::ALL {
            assert_eq!(serde_json::to_string(&l).unwrap(), format!("\"{}\"", l.name()));
        }
    }
}
