//! Seeded instance generators for the three benchmark families.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// Densities at or above this are unreachable by preferential attachment
/// without a seed clique spanning most of the graph.
pub const BA_MAX_DENSITY: f64 = 0.8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    ErdosRenyi,
    BarabasiAlbert,
    Chordal,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::ErdosRenyi, Family::BarabasiAlbert, Family::Chordal];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::ErdosRenyi => "erdos_renyi",
            Family::BarabasiAlbert => "barabasi_albert",
            Family::Chordal => "chordal",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "erdos_renyi" | "er" | "gnp" => Ok(Family::ErdosRenyi),
            "barabasi_albert" | "ba" => Ok(Family::BarabasiAlbert),
            "chordal" | "ch" => Ok(Family::Chordal),
            other => Err(Error::InvalidSpec(format!("unknown graph family '{other}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub family: Family,
    pub n: usize,
    pub density: f64,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(family: Family, n: usize, density: f64, seed: u64) -> Self {
        Self { family, n, density, seed }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.density) || self.density.is_nan() {
            return Err(Error::InvalidSpec(format!(
                "density must lie in [0, 1], got {}",
                self.density
            )));
        }
        if self.family == Family::BarabasiAlbert && self.density >= BA_MAX_DENSITY {
            return Err(Error::InvalidSpec(format!(
                "density {} cannot be attained by standard preferential attachment; \
                 barabasi_albert instances are limited to densities below {BA_MAX_DENSITY}",
                self.density
            )));
        }
        Ok(())
    }

    fn rng(&self) -> Xoshiro256PlusPlus {
        Xoshiro256PlusPlus::seed_from_u64(self.seed)
    }
}

/// Provenance recorded next to a generated instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenMeta {
    pub family: Family,
    pub n: usize,
    pub target_density: f64,
    pub achieved_density: f64,
    pub seed: u64,
    /// Attachment count for preferential attachment.
    pub attachment: Option<usize>,
    /// Perfect elimination ordering used to build a chordal instance.
    pub peo: Option<Vec<usize>>,
}

impl GenMeta {
    /// Single-line `key=value` rendering used for sidecar files.
    pub fn to_line(&self) -> String {
        let mut line = format!(
            "family={} n={} target_density={} achieved_density={:.6} seed={}",
            self.family, self.n, self.target_density, self.achieved_density, self.seed
        );
        if let Some(m) = self.attachment {
            line.push_str(&format!(" attachment={m}"));
        }
        if let Some(peo) = &self.peo {
            let joined: Vec<String> = peo.iter().map(|v| v.to_string()).collect();
            line.push_str(&format!(" peo={}", joined.join(",")));
        }
        line
    }
}

#[derive(Clone, Debug)]
pub struct Generated {
    pub graph: Graph,
    pub meta: GenMeta,
}

pub fn generate(spec: &GenSpec) -> Result<Generated> {
    spec.validate()?;
    let (graph, attachment, peo) = match spec.family {
        Family::ErdosRenyi => (gen_erdos_renyi(spec)?, None, None),
        Family::BarabasiAlbert => {
            let m = ba_attachment(spec.n, spec.density);
            (gen_barabasi_albert(spec)?, Some(m), None)
        }
        Family::Chordal => {
            let (g, peo) = gen_chordal(spec)?;
            (g, None, Some(peo))
        }
    };
    let meta = GenMeta {
        family: spec.family,
        n: spec.n,
        target_density: spec.density,
        achieved_density: graph.density(),
        seed: spec.seed,
        attachment,
        peo,
    };
    Ok(Generated { graph, meta })
}

fn expect_family(spec: &GenSpec, family: Family) -> Result<()> {
    spec.validate()?;
    if spec.family != family {
        return Err(Error::InvalidSpec(format!(
            "expected family {family}, got {}",
            spec.family
        )));
    }
    Ok(())
}

/// `G(n, p)`: every pair is an edge independently with probability `p`.
pub fn gen_erdos_renyi(spec: &GenSpec) -> Result<Graph> {
    expect_family(spec, Family::ErdosRenyi)?;
    let mut rng = spec.rng();
    let n = spec.n;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < spec.density {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// Expected density of preferential attachment with attachment count `m`
/// started from a clique on `m + 1` vertices.
fn ba_density(n: usize, m: usize) -> f64 {
    let edges = m * (m + 1) / 2 + (n - m - 1) * m;
    edges as f64 / (n * (n - 1) / 2) as f64
}

/// Attachment count whose final density is closest to `density`.
pub fn ba_attachment(n: usize, density: f64) -> usize {
    if n < 2 {
        return 1;
    }
    (1..n)
        .min_by(|&a, &b| {
            let da = (ba_density(n, a) - density).abs();
            let db = (ba_density(n, b) - density).abs();
            da.total_cmp(&db)
        })
        .unwrap_or(1)
}

/// Preferential attachment seeded with a clique on `m + 1` vertices; each
/// later vertex attaches to `m` distinct earlier vertices chosen with
/// probability proportional to degree.
pub fn gen_barabasi_albert(spec: &GenSpec) -> Result<Graph> {
    expect_family(spec, Family::BarabasiAlbert)?;
    let n = spec.n;
    if n < 2 {
        return Ok(Graph::empty(n));
    }
    let m = ba_attachment(n, spec.density);
    let mut rng = spec.rng();
    let mut edges = Vec::new();
    // Each endpoint occurrence is one ticket, so sampling a ticket is
    // degree-proportional.
    let mut tickets: Vec<usize> = Vec::new();
    for u in 0..=m {
        for v in u + 1..=m {
            edges.push((u, v));
            tickets.push(u);
            tickets.push(v);
        }
    }
    let mut chosen = Vec::with_capacity(m);
    for v in m + 1..n {
        chosen.clear();
        while chosen.len() < m {
            let t = tickets[rng.gen_range(0..tickets.len())];
            if !chosen.contains(&t) {
                chosen.push(t);
            }
        }
        for &t in &chosen {
            edges.push((t, v));
            tickets.push(t);
            tickets.push(v);
        }
    }
    Graph::from_edges(n, edges)
}

/// Chordal graph built along a random perfect elimination ordering.
///
/// Vertices are inserted one at a time; each new vertex is joined to a clique
/// of already-inserted vertices, so the reverse insertion order eliminates
/// every vertex while its remaining neighbors form a clique. The requested
/// clique size follows a binomial draw plus the running deficit against the
/// target edge count. Returns the graph and the PEO.
pub fn gen_chordal(spec: &GenSpec) -> Result<(Graph, Vec<usize>)> {
    expect_family(spec, Family::Chordal)?;
    let n = spec.n;
    let p = spec.density;
    let mut rng = spec.rng();

    // Internal labels are insertion positions; `label` maps them to output ids.
    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(&mut rng);

    let mut closed: Vec<VertexSet> = Vec::with_capacity(n);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for t in 0..n {
        let target_total = p * (t * (t + 1) / 2) as f64;
        let draw = (0..t).filter(|_| rng.gen::<f64>() < p).count() as f64;
        let deficit = target_total - (edges.len() as f64 + p * t as f64);
        let want = (draw + deficit).round().clamp(0.0, t as f64) as usize;

        let clique = if want == 0 {
            Vec::new()
        } else {
            let mut best: Vec<usize> = Vec::new();
            for _ in 0..4 {
                let c = grow_clique(&closed, t, want, &mut rng);
                if c.len() > best.len() {
                    best = c;
                }
                if best.len() >= want {
                    break;
                }
            }
            best
        };

        let mut nb = VertexSet::new(n);
        nb.insert(t);
        for &u in &clique {
            nb.insert(u);
            closed[u].insert(t);
            edges.push((u, t));
        }
        closed.push(nb);
    }

    let relabelled = edges.iter().map(|&(u, v)| (label[u], label[v]));
    let g = Graph::from_edges(n, relabelled)?;
    let peo = (0..n).rev().map(|t| label[t]).collect();
    Ok((g, peo))
}

/// Randomized greedy clique among the first `t` inserted vertices, capped at
/// `want` members.
fn grow_clique(closed: &[VertexSet], t: usize, want: usize, rng: &mut Xoshiro256PlusPlus) -> Vec<usize> {
    let start = rng.gen_range(0..t);
    let mut clique = vec![start];
    let mut candidates: Vec<usize> = closed[start].iter().filter(|&u| u != start && u < t).collect();
    candidates.shuffle(rng);
    for u in candidates {
        if clique.len() >= want {
            break;
        }
        if clique.iter().all(|&c| closed[c].contains(u)) {
            clique.push(u);
        }
    }
    clique
}
