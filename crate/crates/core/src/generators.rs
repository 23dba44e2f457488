//! Seeded desk-scale instances from three families whose constraint
//! matrices have few distinct subdeterminants: generalized network flow,
//! perfect d-matching with one coupling constraint, and edge-weighted vertex
//! cover with a shared integer shift.
//!
//! Capacities, weights, costs and d-values are drawn from 1..=5. Arcs and
//! edges are listed in lexicographic order of their endpoint indices.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::rank;
use crate::matrix::IntMatrix;
use crate::optimize::{InequalityProblem, Instance, StandardIP};
use crate::oracle::Box;
use crate::recognition::int_json;

const MAX_ATTEMPTS: usize = 1000;
const MAX_DATA: i64 = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    NetworkFlow,
    DMatching,
    VertexCover,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::NetworkFlow, Family::DMatching, Family::VertexCover];
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::NetworkFlow => "network_flow",
            Family::DMatching => "d_matching",
            Family::VertexCover => "vertex_cover",
        })
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "network_flow" => Ok(Family::NetworkFlow),
            "d_matching" => Ok(Family::DMatching),
            "vertex_cover" => Ok(Family::VertexCover),
            _ => Err(Error::Contract(format!("unknown family `{s}`"))),
        }
    }
}

/// `left`/`right` are |S|/|T| for network flow, and the side sizes of each
/// of the two bipartite graphs otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenSpec {
    pub family: Family,
    pub a: u32,
    pub b: u32,
    pub left: usize,
    pub right: usize,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(family: Family, a: u32, b: u32, seed: u64) -> Self {
        GenSpec {
            family,
            a,
            b,
            left: 2,
            right: 2,
            seed,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.b == 0 || self.a < self.b {
            return Err(Error::Contract(format!("need a >= b >= 1, got a = {}, b = {}", self.a, self.b)));
        }
        if self.left == 0 || self.right == 0 {
            return Err(Error::Contract("graph sides must be nonempty".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct Generated {
    pub spec: GenSpec,
    pub instance: Instance,
    /// Contains some optimal solution whenever one exists.
    pub bx: Box,
    /// A superset of D(M) for the constraint matrix `M` (`Bᵀ` or `C`).
    pub claimed: BTreeSet<BigInt>,
}

impl Generated {
    pub fn sidecar_json(&self) -> Value {
        let ints = |v: &[BigInt]| Value::Array(v.iter().map(int_json).collect());
        json!({
            "family": self.spec.family.to_string(),
            "a": self.spec.a,
            "b": self.spec.b,
            "left": self.spec.left,
            "right": self.spec.right,
            "seed": self.spec.seed,
            "form": match self.instance {
                Instance::Standard(_) => "standard",
                Instance::Inequality(_) => "inequality",
            },
            "claimed_d_superset": self.claimed.iter().map(int_json).collect::<Vec<_>>(),
            "box": { "lower": ints(&self.bx.lower), "upper": ints(&self.bx.upper) },
        })
    }
}

pub fn generate(spec: &GenSpec) -> Result<Generated> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let claimed: BTreeSet<BigInt> = [spec.a, spec.b, 0].into_iter().map(BigInt::from).collect();
    for _ in 0..MAX_ATTEMPTS {
        let attempt = match spec.family {
            Family::NetworkFlow => network_flow(spec, &mut rng),
            Family::DMatching => d_matching(spec, &mut rng),
            Family::VertexCover => vertex_cover(spec, &mut rng),
        };
        if let Some((instance, bx)) = attempt {
            return Ok(Generated {
                spec: spec.clone(),
                instance,
                bx,
                claimed,
            });
        }
    }
    Err(Error::Generation(format!(
        "no valid {} instance after {MAX_ATTEMPTS} attempts",
        spec.family
    )))
}

fn data(rng: &mut ChaCha8Rng) -> i64 {
    rng.gen_range(1..=MAX_DATA)
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// `[[A, 0], [I, I]]` with right-hand side `[rhs; u]`: `A f = rhs`,
/// `f + slack = u`. Its maximal minors are those of `A`.
fn with_capacities(a: &[Vec<i64>], rhs: &[i64], u: &[i64], profit: &[i64]) -> (StandardIP, Box) {
    let k = u.len();
    let mut rows: Vec<Vec<i64>> = a
        .iter()
        .map(|r| r.iter().copied().chain(std::iter::repeat_n(0, k)).collect())
        .collect();
    for e in 0..k {
        let mut r = vec![0; 2 * k];
        r[e] = 1;
        r[k + e] = 1;
        rows.push(r);
    }
    let mut b: Vec<i64> = rhs.to_vec();
    b.extend_from_slice(u);
    let mut c = profit.to_vec();
    c.extend(std::iter::repeat_n(0, k));
    let upper: Vec<i64> = u.iter().chain(u).copied().collect();
    let ip = StandardIP::new(IntMatrix::from_rows(&rows), ints(&b), ints(&c)).expect("sizes agree");
    let bx = Box::new(vec![BigInt::zero(); 2 * k], ints(&upper)).expect("bounds ordered");
    (ip, bx)
}

/// Vertices `0..|S|` form S with s = 0, then the gain vertex, then T with
/// t its first vertex. The conservation row of the gain vertex is scaled by
/// `b`, so arcs from S into it carry `a`.
fn network_flow(spec: &GenSpec, rng: &mut ChaCha8Rng) -> Option<(Instance, Box)> {
    let (ns, nt) = (spec.left, spec.right);
    let v = ns;
    let t = ns + 1;
    let nv = ns + 1 + nt;
    let in_s = |x: usize| x < ns;
    let in_t = |x: usize| x > v;
    let mut arcs = Vec::new();
    for x in 0..nv {
        for y in 0..nv {
            let allowed = x != y
                && !(in_s(x) && in_t(y))
                && !(in_t(x) && in_s(y))
                && !(x == v && in_s(y));
            if allowed && rng.gen_bool(0.5) {
                arcs.push((x, y));
            }
        }
    }
    if !reaches(nv, &arcs, 0, t) {
        return None;
    }
    let rows_of: Vec<usize> = (0..nv).filter(|&x| x != 0 && x != t).collect();
    let (a, b) = (spec.a as i64, spec.b as i64);
    let mut mat = vec![vec![0i64; arcs.len()]; rows_of.len()];
    for (e, &(x, y)) in arcs.iter().enumerate() {
        if let Some(r) = rows_of.iter().position(|&z| z == x) {
            mat[r][e] = if x == v { -b } else { -1 };
        }
        if let Some(r) = rows_of.iter().position(|&z| z == y) {
            mat[r][e] = if y == v {
                if in_s(x) {
                    a
                } else {
                    b
                }
            } else {
                1
            };
        }
    }
    if rank(&IntMatrix::from_rows(&mat)) < rows_of.len() {
        return None;
    }
    let u: Vec<i64> = arcs.iter().map(|_| data(rng)).collect();
    let profit: Vec<i64> = arcs
        .iter()
        .map(|&(x, y)| i64::from(y == t) - i64::from(x == t))
        .collect();
    let (ip, bx) = with_capacities(&mat, &vec![0; rows_of.len()], &u, &profit);
    Some((Instance::Standard(ip), bx))
}

fn reaches(nv: usize, arcs: &[(usize, usize)], from: usize, to: usize) -> bool {
    let mut seen = vec![false; nv];
    let mut stack = vec![from];
    seen[from] = true;
    while let Some(x) = stack.pop() {
        for &(p, q) in arcs {
            if p == x && !seen[q] {
                seen[q] = true;
                stack.push(q);
            }
        }
    }
    seen[to]
}

/// A random bipartite graph on `left + right` vertices with at least one
/// edge, as (left index, right index) pairs.
fn bipartite(left: usize, right: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    loop {
        let edges: Vec<(usize, usize)> = (0..left)
            .flat_map(|i| (0..right).map(move |j| (i, j)))
            .filter(|_| rng.gen_bool(0.5))
            .collect();
        if !edges.is_empty() {
            return edges;
        }
    }
}

/// Two disjoint bipartite graphs as one edge list over global vertex ids.
/// Returns (edges, graph of each edge, number of vertices).
fn two_graphs(spec: &GenSpec, rng: &mut ChaCha8Rng) -> (Vec<(usize, usize)>, Vec<usize>, usize) {
    let side = spec.left + spec.right;
    let mut edges = Vec::new();
    let mut graph = Vec::new();
    for gi in 0..2 {
        let base = gi * side;
        for (i, j) in bipartite(spec.left, spec.right, rng) {
            edges.push((base + i, base + spec.left + j));
            graph.push(gi);
        }
    }
    (edges, graph, 2 * side)
}

fn sign(rng: &mut ChaCha8Rng) -> i64 {
    if rng.gen_bool(0.5) {
        1
    } else {
        -1
    }
}

/// Degree constraints of two bipartite graphs (one redundant row dropped
/// per connected component) plus `±a f(e1) ± b f(e2) = g`, with capacities.
/// The right-hand side comes from a random feasible point.
fn d_matching(spec: &GenSpec, rng: &mut ChaCha8Rng) -> Option<(Instance, Box)> {
    let (edges, graph, nv) = two_graphs(spec, rng);
    let k = edges.len();
    let pick = |gi: usize, rng: &mut ChaCha8Rng| {
        let cands: Vec<usize> = (0..k).filter(|&e| graph[e] == gi).collect();
        cands[rng.gen_range(0..cands.len())]
    };
    let (e1, e2) = (pick(0, rng), pick(1, rng));
    let (s1, s2) = (sign(rng), sign(rng));
    let u: Vec<i64> = (0..k).map(|_| data(rng)).collect();
    let f0: Vec<i64> = u.iter().map(|&ue| rng.gen_range(1..=ue)).collect();
    let profit: Vec<i64> = (0..k).map(|_| data(rng)).collect();

    let mut comp = Dsu::new(nv);
    for &(x, y) in &edges {
        comp.union(x, y);
    }
    let used: BTreeSet<usize> = edges.iter().flat_map(|&(x, y)| [x, y]).collect();
    let mut dropped = BTreeSet::new();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for &x in &used {
        if dropped.insert(comp.find(x)) {
            continue;
        }
        let row: Vec<i64> = edges.iter().map(|&(p, q)| i64::from(p == x || q == x)).collect();
        rhs.push(row.iter().zip(&f0).map(|(r, f)| r * f).sum());
        rows.push(row);
    }
    let (a, b) = (spec.a as i64, spec.b as i64);
    let mut coupling = vec![0; k];
    coupling[e1] = s1 * a;
    coupling[e2] = s2 * b;
    rhs.push(s1 * a * f0[e1] + s2 * b * f0[e2]);
    rows.push(coupling);
    if rank(&IntMatrix::from_rows(&rows)) < rows.len() {
        return None;
    }
    let (ip, bx) = with_capacities(&rows, &rhs, &u, &profit);
    Some((Instance::Standard(ip), bx))
}

/// min Σ c(v) f(v) subject to f(u) + f(v) ± a z >= w(e) on the first graph,
/// ± b z on the second, f >= 0, as max{h·y : C y <= g} over y = (f, z).
fn vertex_cover(spec: &GenSpec, rng: &mut ChaCha8Rng) -> Option<(Instance, Box)> {
    let (edges, graph, _) = two_graphs(spec, rng);
    let verts: Vec<usize> = edges
        .iter()
        .flat_map(|&(x, y)| [x, y])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let nf = verts.len();
    let coef = [sign(rng) * spec.a as i64, sign(rng) * spec.b as i64];
    let w: Vec<i64> = edges.iter().map(|_| data(rng)).collect();
    let cost: Vec<i64> = verts.iter().map(|_| data(rng)).collect();

    let mut rows = Vec::new();
    let mut g = Vec::new();
    for (e, &(x, y)) in edges.iter().enumerate() {
        let mut r = vec![0i64; nf + 1];
        r[verts.binary_search(&x).unwrap()] = -1;
        r[verts.binary_search(&y).unwrap()] = -1;
        r[nf] = -coef[graph[e]];
        rows.push(r);
        g.push(-w[e]);
    }
    for j in 0..nf {
        let mut r = vec![0i64; nf + 1];
        r[j] = -1;
        rows.push(r);
        g.push(0);
    }
    let mut h: Vec<i64> = cost.iter().map(|c| -c).collect();
    h.push(0);

    // |z| beyond max w / min(a, b) only slackens constraints, and then no
    // f(v) needs to exceed its largest requirement
    let wmax = *w.iter().max().unwrap();
    let zmax = Integer::div_ceil(&wmax, &(spec.b as i64));
    let mut upper: Vec<i64> = verts
        .iter()
        .map(|&x| {
            edges
                .iter()
                .enumerate()
                .filter(|(_, &(p, q))| p == x || q == x)
                .map(|(e, _)| w[e] + coef[graph[e]].abs() * zmax)
                .max()
                .unwrap()
        })
        .collect();
    upper.push(zmax);
    let mut lower = vec![0i64; nf];
    lower.push(-zmax);
    let bx = Box::new(ints(&lower), ints(&upper)).expect("bounds ordered");
    let problem = InequalityProblem {
        c_mat: IntMatrix::from_rows(&rows),
        g: ints(&g),
        h: ints(&h),
    };
    Some((Instance::Inequality(problem), bx))
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        if self.0[x] != x {
            let r = self.find(self.0[x]);
            self.0[x] = r;
        }
        self.0[x]
    }

    fn union(&mut self, x: usize, y: usize) {
        let (rx, ry) = (self.find(x), self.find(y));
        self.0[rx.max(ry)] = rx.min(ry);
    }
}
