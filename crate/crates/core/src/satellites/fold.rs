use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::path::SatPath;
use super::sides::{PatternSide, Pipeline};
use super::torus::CompanionOracle;
use super::Satellite;
use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SatEGroup {
    Trivial,
    /// `⟨m_e⟩`
    Meridian,
    /// All of `A_e`; never produced by the descent.
    Full,
}

/// Edge from a pattern-type vertex `u` to a companion-type vertex `y` with
/// label `o e t`.
#[derive(Clone, Debug)]
pub struct SatEdge<A, B> {
    pub u: usize,
    pub y: usize,
    pub o: A,
    pub t: B,
    pub group: SatEGroup,
}

/// A-graph over the satellite graph of groups. Pattern-type vertex groups
/// are `S`; companion-type vertex groups are lists of meridian conjugators.
#[derive(Clone, Debug)]
pub struct SatGraph<S, A, B> {
    pub v0: Vec<Option<S>>,
    pub v1: Vec<Option<Vec<B>>>,
    pub edges: Vec<Option<SatEdge<A, B>>>,
    pub base: usize,
}

pub type GraphOf<P, Q> =
    SatGraph<<P as PatternSide>::Sub, <P as PatternSide>::Elem, <Q as CompanionOracle>::Elem>;
pub type PathOf<P, Q> = SatPath<<P as PatternSide>::Elem, <Q as CompanionOracle>::Elem>;

impl<S, A, B> SatGraph<S, A, B> {
    pub fn v0_ids(&self) -> Vec<usize> {
        (0..self.v0.len()).filter(|&u| self.v0[u].is_some()).collect()
    }

    pub fn v1_ids(&self) -> Vec<usize> {
        (0..self.v1.len()).filter(|&y| self.v1[y].is_some()).collect()
    }

    pub fn edge_ids(&self) -> Vec<usize> {
        (0..self.edges.len()).filter(|&f| self.edges[f].is_some()).collect()
    }

    pub fn edge(&self, f: usize) -> &SatEdge<A, B> {
        self.edges[f].as_ref().expect("live edge")
    }

    fn edge_mut(&mut self, f: usize) -> &mut SatEdge<A, B> {
        self.edges[f].as_mut().expect("live edge")
    }

    pub fn group_u(&self, u: usize) -> &S {
        self.v0[u].as_ref().expect("live vertex")
    }

    pub fn group_y(&self, y: usize) -> &[B] {
        self.v1[y].as_ref().expect("live vertex")
    }

    pub fn edges_at_u(&self, u: usize) -> Vec<usize> {
        self.edge_ids().into_iter().filter(|&f| self.edge(f).u == u).collect()
    }

    pub fn edges_at_y(&self, y: usize) -> Vec<usize> {
        self.edge_ids().into_iter().filter(|&f| self.edge(f).y == y).collect()
    }

    pub fn is_tree(&self) -> bool {
        let nv = self.v0_ids().len() + self.v1_ids().len();
        let ne = self.edge_ids().len();
        if ne + 1 != nv {
            return false;
        }
        let (mut seen0, mut seen1) = (vec![false; self.v0.len()], vec![false; self.v1.len()]);
        seen0[self.base] = true;
        let mut stack = vec![(true, self.base)];
        let mut count = 1;
        while let Some((pat, v)) = stack.pop() {
            let around = if pat { self.edges_at_u(v) } else { self.edges_at_y(v) };
            for f in around {
                let e = self.edge(f);
                let (seen, w) = if pat { (&mut seen1, e.y) } else { (&mut seen0, e.u) };
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push((!pat, w));
                }
            }
        }
        count == nv
    }

    /// Edge path from the base to every pattern-type vertex.
    pub fn tree_paths(&self) -> Vec<Option<Vec<usize>>> {
        let mut out: Vec<Option<Vec<usize>>> = vec![None; self.v0.len()];
        out[self.base] = Some(Vec::new());
        let mut queue = alloc::collections::VecDeque::from([self.base]);
        let mut seen_y = vec![false; self.v1.len()];
        while let Some(u) = queue.pop_front() {
            let here = out[u].clone().unwrap();
            for f in self.edges_at_u(u) {
                let y = self.edge(f).y;
                if seen_y[y] {
                    continue;
                }
                seen_y[y] = true;
                for g in self.edges_at_y(y) {
                    let w = self.edge(g).u;
                    if g != f && out[w].is_none() {
                        out[w] = Some([here.clone(), vec![f, g]].concat());
                        queue.push_back(w);
                    }
                }
            }
        }
        out
    }
}

/// `(c_1, |EB|, |EB| - |E_B|)`, compared lexicographically.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ComplexityTame(pub usize, pub usize, pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatStep {
    pub step: usize,
    pub kind: &'static str,
    pub site: String,
    pub before: ComplexityTame,
    pub after: ComplexityTame,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Folded,
    /// A companion vertex group reached `w ≥ b(k_1)`.
    BoundExceeded { vertex: usize, weight: usize, history: Vec<String> },
}

#[derive(Clone, Debug)]
pub struct FoldOutcome<S, A, B> {
    pub verdict: Verdict,
    pub graph: SatGraph<S, A, B>,
    pub trace: Vec<SatStep>,
    pub initial: ComplexityTame,
    pub inputs: Vec<SatPath<A, B>>,
    /// Inputs whose membership the final graph witnesses.
    pub inputs_witnessed: usize,
    /// Whether every fold search was a decision procedure.
    pub exact: bool,
}

pub type OutcomeOf<P, Q> =
    FoldOutcome<<P as PatternSide>::Sub, <P as PatternSide>::Elem, <Q as CompanionOracle>::Elem>;

pub(super) enum Move<B> {
    /// `o_2 = β o_1 α(c)` at a pattern vertex; merges companion vertices.
    IaPattern { f1: usize, f2: usize, c: (i64, i64) },
    /// `t_2^{-1} = β t_1^{-1} ω(c)` at a companion vertex; merges pattern vertices.
    IaCompanion { f1: usize, f2: usize, beta: B, c: (i64, i64) },
    /// `o m_V o^{-1} ∈ B_u` across a trivial edge.
    Iia { f: usize },
}

enum Applied {
    Done,
    Bound { vertex: usize, weight: usize },
}

impl<P: PatternSide, Q: CompanionOracle> Satellite<P, Q> {
    /// Wedge of one subdivided path per spec; the far pattern vertex carries
    /// `⟨a_k x1 a_k^{-1}⟩`.
    pub fn initial_graph(&self, specs: &[PathOf<P, Q>]) -> Result<GraphOf<P, Q>> {
        let mut g = SatGraph { v0: vec![Some(self.pattern.trivial())], v1: Vec::new(), edges: Vec::new(), base: 0 };
        for spec in specs {
            let spec = if spec.v1.is_empty() {
                SatPath {
                    v0: vec![spec.v0[0].clone(), self.pattern.identity()],
                    v1: vec![self.companion.identity()],
                }
            } else {
                spec.clone()
            };
            let mut cur = g.base;
            for (i, b) in spec.v1.iter().enumerate() {
                let y = g.v1.len();
                g.v1.push(Some(Vec::new()));
                g.edges.push(Some(SatEdge { u: cur, y, o: spec.v0[i].clone(), t: b.clone(), group: SatEGroup::Trivial }));
                let w = g.v0.len();
                g.v0.push(Some(self.pattern.trivial()));
                g.edges.push(Some(SatEdge {
                    u: w,
                    y,
                    o: self.pattern.identity(),
                    t: self.companion.identity(),
                    group: SatEGroup::Trivial,
                }));
                cur = w;
            }
            g.v0[cur] = Some(self.pattern.meridian_subgroup(spec.v0.last().unwrap())?);
        }
        Ok(g)
    }

    pub fn complexity(&self, g: &GraphOf<P, Q>) -> ComplexityTame {
        let c1 = g.v0_ids().iter().map(|&u| self.pattern.weight(g.group_u(u))).sum();
        let edges = g.edge_ids();
        let trivial = edges.iter().filter(|&&f| g.edge(f).group == SatEGroup::Trivial).count();
        ComplexityTame(c1, 2 * edges.len(), 2 * trivial)
    }

    /// Runs the folding descent on the wedge of `specs`.
    pub fn fold_meridional(&self, specs: &[PathOf<P, Q>]) -> Result<OutcomeOf<P, Q>> {
        if specs.len() >= self.bridge_number() {
            return Err(Error::precondition(format!(
                "{} meridians is not below the bridge number {}",
                specs.len(),
                self.bridge_number()
            )));
        }
        let mut g = self.initial_graph(specs)?;
        let initial = self.complexity(&g);
        let mut c = initial;
        let mut trace = Vec::new();
        let mut history = Vec::new();
        let limit = (initial.0 + 1) * (initial.1 + 1) * (initial.1 + 1);
        for step in 0..=limit {
            let Some(mv) = self.next_move(&g)? else {
                self.check_predicates(&g)?;
                let inputs_witnessed = self.witness_inputs(&g, specs)?;
                return Ok(FoldOutcome {
                    verdict: Verdict::Folded,
                    graph: g,
                    trace,
                    initial,
                    inputs: specs.to_vec(),
                    inputs_witnessed,
                    exact: self.pattern.exact(),
                });
            };
            let (kind, site) = self.site_text(&g, &mv);
            history.push(format!("{kind} at {site}"));
            let applied = self.apply(&mut g, mv)?;
            if let Applied::Bound { vertex, weight } = applied {
                return Ok(FoldOutcome {
                    verdict: Verdict::BoundExceeded { vertex, weight, history },
                    graph: g,
                    trace,
                    initial,
                    inputs: specs.to_vec(),
                    inputs_witnessed: 0,
                    exact: self.pattern.exact(),
                });
            }
            let after = self.complexity(&g);
            if after >= c {
                return Err(Error::Stall(format!("step {step}: {kind} at {site} left complexity {after:?} not below {c:?}")));
            }
            trace.push(SatStep { step, kind, site, before: c, after });
            c = after;
        }
        Err(Error::Stall(format!("no folded graph within {limit} steps")))
    }

    fn lemma_name(&self) -> &'static str {
        match self.pattern.pipeline() {
            Pipeline::Tame => "Proposition 1",
            Pipeline::Benign => "Lemma C1",
        }
    }

    pub(super) fn next_move(&self, g: &GraphOf<P, Q>) -> Result<Option<Move<Q::Elem>>> {
        for y in g.v1_ids() {
            let around = g.edges_at_y(y);
            for (i, &f1) in around.iter().enumerate() {
                for &f2 in &around[i + 1..] {
                    let n1 = self.companion.inverse(&g.edge(f1).t);
                    let n2 = self.companion.inverse(&g.edge(f2).t);
                    if let Some((beta, c)) = self.companion.factor(g.group_y(y), &n2, &n1)? {
                        return Ok(Some(Move::IaCompanion { f1, f2, beta, c }));
                    }
                }
            }
        }
        for u in g.v0_ids() {
            let around = g.edges_at_u(u);
            for (i, &f1) in around.iter().enumerate() {
                for &f2 in &around[i + 1..] {
                    if let Some((_, c)) = self.pattern.double_coset(g.group_u(u), &g.edge(f2).o, &g.edge(f1).o)? {
                        return Ok(Some(Move::IaPattern { f1, f2, c }));
                    }
                }
            }
        }
        let mv = self.pattern.peripheral(1, 0);
        for f in g.edge_ids() {
            let e = g.edge(f);
            if e.group != SatEGroup::Trivial {
                continue;
            }
            if self.pattern.contains(g.group_u(e.u), &self.pattern.conj(&e.o, &mv)) {
                return Ok(Some(Move::Iia { f }));
            }
            let n = self.companion.inverse(&e.t);
            if self.companion.peripheral_intersection(g.group_y(e.y), &n)?.is_some() {
                return Err(Error::falsified(
                    "Lemma 2",
                    format!("edge {f} admits a fold of type IIA at its companion end but no fold of type IA applies"),
                ));
            }
        }
        Ok(None)
    }

    fn site_text(&self, g: &GraphOf<P, Q>, mv: &Move<Q::Elem>) -> (&'static str, String) {
        match mv {
            Move::IaPattern { f1, f2, .. } => ("IA pattern", format!("u{} edges {f1},{f2}", g.edge(*f1).u)),
            Move::IaCompanion { f1, f2, .. } => ("IA companion", format!("y{} edges {f1},{f2}", g.edge(*f1).y)),
            Move::Iia { f } => ("IIA", format!("edge {f} u{} -> y{}", g.edge(*f).u, g.edge(*f).y)),
        }
    }

    fn apply(&self, g: &mut GraphOf<P, Q>, mv: Move<Q::Elem>) -> Result<Applied> {
        match mv {
            Move::IaPattern { f1, f2, c } => self.fold_pattern(g, f1, f2, c),
            Move::IaCompanion { f1, f2, beta, c } => self.fold_companion(g, f1, f2, beta, c),
            Move::Iia { f } => {
                let y = g.edge(f).y;
                let h = self.companion.inverse(&g.edge(f).t);
                let (basis, _) = self.companion.join(g.group_y(y), &h)?;
                g.edge_mut(f).group = SatEGroup::Meridian;
                g.v1[y] = Some(basis);
                self.check_companion(g, y)
            }
        }
    }

    /// Elementary IA fold at a pattern vertex after the auxiliary moves that
    /// make the two labels agree.
    fn fold_pattern(&self, g: &mut GraphOf<P, Q>, f1: usize, f2: usize, c: (i64, i64)) -> Result<Applied> {
        let q = &self.companion;
        let o1 = g.edge(f1).o.clone();
        let t2 = q.mul(&q.peripheral(c.0, c.1), &g.edge(f2).t);
        g.edge_mut(f2).o = o1;
        let (y1, y2) = (g.edge(f1).y, g.edge(f2).y);
        let d = q.mul(&q.inverse(&g.edge(f1).t), &t2);
        let dinv = q.inverse(&d);
        for f in g.edges_at_y(y2) {
            let t = if f == f2 { t2.clone() } else { g.edge(f).t.clone() };
            g.edge_mut(f).t = q.mul(&t, &dinv);
        }
        let moved: Vec<Q::Elem> = g.group_y(y2).iter().map(|h| q.mul(&d, h)).collect();
        let mut basis = g.group_y(y1).to_vec();
        for h in &moved {
            basis = q.join(&basis, h)?.0;
        }
        if !q.equal(&g.edge(f1).t, &g.edge(f2).t) {
            return Err(Error::Stall(format!("labels of edges {f1}, {f2} disagree after auxiliary moves")));
        }
        for f in g.edges_at_y(y2) {
            g.edge_mut(f).y = y1;
        }
        let merged = g.edge(f1).group.max(g.edge(f2).group);
        g.edge_mut(f1).group = merged;
        g.edges[f2] = None;
        g.v1[y2] = None;
        g.v1[y1] = Some(basis);
        self.check_companion(g, y1)
    }

    /// Elementary IA fold at a companion vertex; the two pattern vertices merge
    /// and their groups are joined.
    fn fold_companion(&self, g: &mut GraphOf<P, Q>, f1: usize, f2: usize, beta: Q::Elem, c: (i64, i64)) -> Result<Applied> {
        let (p, q) = (&self.pattern, &self.companion);
        // Keep the base: the vertex absorbed by A0 must not be the base.
        let (f1, f2, beta, c) =
            if g.edge(f2).u == g.base { (f2, f1, q.inverse(&beta), (-c.0, -c.1)) } else { (f1, f2, beta, c) };
        let n1 = q.inverse(&g.edge(f1).t);
        let n2 = q.inverse(&g.edge(f2).t);
        let back = q.mul(&q.mul(&q.inverse(&beta), &n2), &q.peripheral(-c.0, -c.1));
        if !q.equal(&back, &n1) {
            return Err(Error::Stall(format!("companion factor for edges {f1}, {f2} does not verify")));
        }
        let t1 = g.edge(f1).t.clone();
        g.edge_mut(f2).t = t1;
        let o2 = p.mul(&g.edge(f2).o, &p.peripheral(-c.0, -c.1));
        let (u1, u2) = (g.edge(f1).u, g.edge(f2).u);
        let d = p.mul(&g.edge(f1).o, &p.inverse(&o2));
        for f in g.edges_at_u(u2) {
            let o = if f == f2 { o2.clone() } else { g.edge(f).o.clone() };
            g.edge_mut(f).o = p.mul(&d, &o);
        }
        let moved = p.conjugate_sub(g.group_u(u2), &d)?;
        let (w1, w2) = (p.weight(g.group_u(u1)), p.weight(&moved));
        let joined = p.join(g.group_u(u1), &moved)?;
        if p.weight(&joined) > w1 + w2 {
            return Err(Error::falsified(self.lemma_name(), format!("join of weights {w1} and {w2} has weight {}", p.weight(&joined))));
        }
        for f in g.edges_at_u(u2) {
            g.edge_mut(f).u = u1;
        }
        let merged = g.edge(f1).group.max(g.edge(f2).group);
        g.edge_mut(f1).group = merged;
        g.edges[f2] = None;
        g.v0[u2] = None;
        g.v0[u1] = Some(joined);
        Ok(Applied::Done)
    }

    /// Tameness of the companion vertex `y`: the weight bound, one witness
    /// edge per meridian, and the counting chain `k·w ≤ k·|S| ≤ Σ w̄ ≤ c_1`.
    fn check_companion(&self, g: &GraphOf<P, Q>, y: usize) -> Result<Applied> {
        let w = g.group_y(y).len();
        if w >= self.companion.bridge_number() {
            return Ok(Applied::Bound { vertex: y, weight: w });
        }
        let star: Vec<usize> = g.edges_at_y(y).into_iter().filter(|&f| g.edge(f).group != SatEGroup::Trivial).collect();
        if w > star.len() {
            return Err(Error::falsified("tameness", format!("companion vertex {y} has {w} meridians but {} witness edges", star.len())));
        }
        let mut covered = vec![false; w];
        for &f in &star {
            match self.companion.peripheral_intersection(g.group_y(y), &self.companion.inverse(&g.edge(f).t)) {
                Ok(Some(i)) => covered[i] = true,
                Ok(None) => {
                    return Err(Error::falsified("tameness", format!("witness edge {f} carries no meridian of vertex {y}")))
                }
                Err(Error::Unsupported(_)) => covered.iter_mut().for_each(|c| *c = true),
                Err(e) => return Err(e),
            }
        }
        if covered.iter().any(|c| !c) {
            return Err(Error::falsified("tameness", format!("a meridian of companion vertex {y} has no witness edge")));
        }
        let k = self.pattern.peripheral_weight();
        let sum: usize = star.iter().map(|&f| self.pattern.weight(g.group_u(g.edge(f).u))).sum();
        let c1 = self.complexity(g).0;
        if k * star.len() > sum || sum > c1 || c1 >= self.bridge_number() {
            return Err(Error::falsified(
                "IA case 1 inequality chain",
                format!("at y{y}: k|S| = {}, sum = {sum}, c1 = {c1}, b = {}", k * star.len(), self.bridge_number()),
            ));
        }
        Ok(Applied::Done)
    }

    fn check_predicates(&self, g: &GraphOf<P, Q>) -> Result<()> {
        if !g.is_tree() {
            return Err(Error::Stall("underlying graph is not a tree".into()));
        }
        let mv = self.pattern.peripheral(1, 0);
        for f in g.edge_ids() {
            let e = g.edge(f);
            match e.group {
                SatEGroup::Trivial => {}
                SatEGroup::Meridian => {
                    if !self.pattern.contains(g.group_u(e.u), &self.pattern.conj(&e.o, &mv)) {
                        return Err(Error::Stall(format!("edge {f}: ⟨m_e⟩ does not map into its pattern vertex group")));
                    }
                }
                SatEGroup::Full => return Err(Error::Stall(format!("edge {f} carries all of A_e"))),
            }
        }
        for y in g.v1_ids() {
            if let Applied::Bound { vertex, weight } = self.check_companion(g, y)? {
                return Err(Error::Stall(format!("folded graph has companion vertex {vertex} of weight {weight}")));
            }
        }
        Ok(())
    }

    fn witness_inputs(&self, g: &GraphOf<P, Q>, specs: &[PathOf<P, Q>]) -> Result<usize> {
        let mut n = 0;
        for (i, s) in specs.iter().enumerate() {
            if self.member(g, &self.meridian_of(s))? {
                n += 1;
            } else if self.pattern.exact() {
                return Err(Error::falsified("membership", format!("input {i} is not in the folded subgroup")));
            }
        }
        Ok(n)
    }

    /// Membership in `U(B, u_0)` by reading the reduced path along the graph.
    /// Exact on folded graphs when the pattern double cosets are decided.
    pub fn member(&self, g: &GraphOf<P, Q>, x: &PathOf<P, Q>) -> Result<bool> {
        let x = self.reduce(x);
        self.read(g, &x, 0, g.base, x.v0[0].clone(), &mut Vec::new())
    }

    /// Successful reading of `x` (assumed reduced) as the vertex and
    /// accumulator at each pattern stop.
    pub(super) fn reading(&self, g: &GraphOf<P, Q>, x: &PathOf<P, Q>) -> Result<Option<Vec<(usize, P::Elem)>>> {
        let mut trail = Vec::new();
        Ok(self.read(g, x, 0, g.base, x.v0[0].clone(), &mut trail)?.then_some(trail))
    }

    fn read(
        &self,
        g: &GraphOf<P, Q>,
        x: &PathOf<P, Q>,
        i: usize,
        u: usize,
        acc: P::Elem,
        trail: &mut Vec<(usize, P::Elem)>,
    ) -> Result<bool> {
        let (p, q) = (&self.pattern, &self.companion);
        trail.push((u, acc.clone()));
        if i == x.v1.len() {
            let ok = u == g.base && p.contains(g.group_u(u), &acc);
            if !ok {
                trail.pop();
            }
            return Ok(ok);
        }
        for f in g.edges_at_u(u) {
            let e = g.edge(f);
            let Some((_, c)) = p.double_coset(g.group_u(u), &acc, &e.o)? else { continue };
            let h = q.mul(&q.mul(&q.inverse(&e.t), &q.peripheral(c.0, c.1)), &x.v1[i]);
            for f2 in g.edges_at_y(e.y) {
                let e2 = g.edge(f2);
                let Some((_, c2)) = q.factor(g.group_y(e.y), &h, &q.inverse(&e2.t))? else { continue };
                let next = p.mul(&p.mul(&e2.o, &p.peripheral(c2.0, c2.1)), &x.v0[i + 1]);
                if self.read(g, x, i + 1, e2.u, next, trail)? {
                    return Ok(true);
                }
            }
        }
        trail.pop();
        Ok(false)
    }

    /// Label `μ(γ_u)` of the tree path from the base to `u`.
    pub fn vertex_path(&self, g: &GraphOf<P, Q>, u: usize) -> Option<PathOf<P, Q>> {
        let paths = g.tree_paths();
        let edges = paths[u].as_ref()?;
        let mut out = self.path_identity();
        for pair in edges.chunks(2) {
            let (f, h) = (g.edge(pair[0]), g.edge(pair[1]));
            let step = SatPath {
                v0: vec![f.o.clone(), self.pattern.inverse(&h.o)],
                v1: vec![self.companion.mul(&f.t, &self.companion.inverse(&h.t))],
            };
            out = self.path_mul(&out, &step);
        }
        Some(out)
    }
}
