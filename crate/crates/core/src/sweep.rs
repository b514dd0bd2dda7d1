//! Exhaustive and sampled agreement checks between the equivalent
//! characterizations of freeness.
//!
//! Conditions compared per instance:
//! 1. a weighted elimination ordering exists (brute force over all orderings),
//! 2. the intersection lattice is supersolvable (sampled only),
//! 4. chordal and free of incomparable edges and valley paths,
//! 5. chordal and every induced path is unimodal.

use serde_json::{json, Value};

use crate::arrangement::{build_psi_arrangement, intersection_lattice, supersolvable_mchain, LatticeGuard};
use crate::error::{Error, Result};
use crate::exact::parse_rat;
use crate::io::set_graph_to_json;
use crate::logderiv::decide_freeness;
use crate::random::{random_set_graph, rng_from_seed};
use crate::wgraph::{
    forbidden_paths, induced_paths, is_unimodal, mcs_peo, validate_weo, PeoOutcome, SetGraph, VertexOrdering,
    WeightSet,
};

/// Upper bound on exhaustively enumerated instances.
pub const MAX_SWEEP_INSTANCES: u128 = 2_000_000;

/// Largest vertex count for brute-force ordering search.
pub const MAX_BRUTE_VERTICES: usize = 8;

/// Disagreeing instances listed in a report; all are counted.
const MAX_LISTED: usize = 20;

/// Parses `"∅,{0},{1},{0,1}"`; `{}` also denotes the empty set.
pub fn parse_weight_pool(s: &str) -> Result<Vec<WeightSet>> {
    let mut items = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '{' => depth += 1,
            '}' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| Error::Parse(format!("unbalanced braces in {s:?}")))?
            }
            ',' if depth == 0 => {
                items.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced braces in {s:?}")));
    }
    items.push(cur);
    items
        .iter()
        .map(|item| {
            let item = item.trim();
            if item == "∅" {
                return Ok(WeightSet::empty());
            }
            let inner = item
                .strip_prefix('{')
                .and_then(|t| t.strip_suffix('}'))
                .ok_or_else(|| Error::Parse(format!("invalid weight set {item:?}")))?;
            if inner.trim().is_empty() {
                return Ok(WeightSet::empty());
            }
            inner.split(',').map(parse_rat).collect::<Result<Vec<_>>>().map(WeightSet::new)
        })
        .collect()
}

/// Whether any ordering of the vertices is a weighted elimination ordering.
pub fn weo_exists_brute(g: &SetGraph) -> Result<bool> {
    let n = g.num_vertices();
    if n > MAX_BRUTE_VERTICES {
        return Err(Error::GuardExceeded {
            what: "vertices for brute-force ordering search",
            value: n,
            limit: MAX_BRUTE_VERTICES,
        });
    }
    fn rec(g: &SetGraph, perm: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        if perm.len() == used.len() {
            return validate_weo(g, &VertexOrdering::new(perm.clone()).expect("permutation"));
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                perm.push(v);
                let found = rec(g, perm, used);
                perm.pop();
                used[v] = false;
                if found {
                    return true;
                }
            }
        }
        false
    }
    Ok(rec(g, &mut Vec::with_capacity(n), &mut vec![false; n]))
}

fn is_chordal(g: &SetGraph) -> bool {
    matches!(mcs_peo(g), PeoOutcome::Peo(_))
}

/// Condition (4).
pub fn no_forbidden_paths(g: &SetGraph) -> bool {
    is_chordal(g) && forbidden_paths(g).is_empty()
}

/// Condition (5).
pub fn all_paths_unimodal(g: &SetGraph) -> bool {
    is_chordal(g)
        && induced_paths(g).iter().all(|p| {
            let w: Vec<&WeightSet> = p.iter().map(|&v| g.psi(v)).collect();
            is_unimodal(&w)
        })
}

/// Condition (2); errors when the lattice guard is exceeded.
pub fn lattice_supersolvable(g: &SetGraph, guard: &LatticeGuard) -> Result<bool> {
    let lat = intersection_lattice(&build_psi_arrangement(g), guard)?;
    Ok(supersolvable_mchain(&lat).is_some())
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub max_vertices: usize,
    pub pool: Vec<WeightSet>,
    pub samples: usize,
    pub seed: u64,
}

/// Per-instance verdicts of the compared conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Verdicts {
    pub weo: bool,
    pub forbidden_free: bool,
    pub unimodal: bool,
    /// `decide_freeness` returned a Saito-verified free certificate.
    pub certified_free: bool,
}

impl Verdicts {
    pub fn agree(&self) -> bool {
        self.weo == self.forbidden_free && self.weo == self.unimodal && self.weo == self.certified_free
    }
}

pub fn verdicts(g: &SetGraph) -> Result<Verdicts> {
    Ok(Verdicts {
        weo: weo_exists_brute(g)?,
        forbidden_free: no_forbidden_paths(g),
        unimodal: all_paths_unimodal(g),
        certified_free: decide_freeness(g)?.is_free(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepReport {
    pub instances: u64,
    pub weo_admitting: u64,
    pub agreeing: u64,
    /// Instances where the conditions disagree, sorted by their JSON text.
    pub disagreements: Vec<Value>,
    pub disagreement_count: u64,
    pub sample_size: usize,
    pub sample_supersolvable: u64,
    pub sample_agreeing: u64,
    pub sample_disagreements: Vec<Value>,
}

impl SweepReport {
    pub fn all_agree(&self) -> bool {
        self.agreeing == self.instances && self.sample_agreeing == self.sample_size as u64
    }

    pub fn to_json(&self, cfg: &SweepConfig) -> Value {
        json!({
            "max_vertices": cfg.max_vertices,
            "pool": cfg.pool.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            "exhaustive": {
                "instances": self.instances,
                "weo_admitting": self.weo_admitting,
                "conditions_1_4_5_agree": self.agreeing,
                "disagreement_count": self.disagreement_count,
                "disagreements": self.disagreements,
            },
            "lattice_subsample": {
                "seed": cfg.seed,
                "samples": self.sample_size,
                "supersolvable": self.sample_supersolvable,
                "agreeing": self.sample_agreeing,
                "disagreements": self.sample_disagreements,
            },
        })
    }
}

/// Number of labeled instances with `1..=max_vertices` vertices.
pub fn instance_count(max_vertices: usize, pool_size: usize) -> u128 {
    (1..=max_vertices)
        .map(|n| {
            let pairs = (n * (n - 1) / 2) as u32;
            2u128.saturating_pow(pairs).saturating_mul((pool_size as u128).saturating_pow(n as u32))
        })
        .fold(0u128, u128::saturating_add)
}

/// Calls `f` on every labeled graph with `n` vertices and weights from `pool`.
pub fn for_each_labeled(n: usize, pool: &[WeightSet], mut f: impl FnMut(SetGraph) -> Result<()>) -> Result<()> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let weight_combos = (pool.len() as u64).pow(n as u32);
    for mask in 0u64..(1u64 << pairs.len()) {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        for mut code in 0..weight_combos {
            let psi = (0..n)
                .map(|_| {
                    let w = pool[(code % pool.len() as u64) as usize].clone();
                    code /= pool.len() as u64;
                    w
                })
                .collect();
            f(SetGraph::new(psi, &edges)?)?;
        }
    }
    Ok(())
}

fn push_sorted(list: &mut Vec<Value>, v: Value) {
    list.push(v);
    list.sort_by_cached_key(|v| v.to_string());
    list.truncate(MAX_LISTED);
}

pub fn run_sweep(cfg: &SweepConfig, guard: &LatticeGuard) -> Result<SweepReport> {
    if cfg.pool.is_empty() {
        return Err(Error::Parse("weight pool is empty".into()));
    }
    if cfg.max_vertices == 0 {
        return Err(Error::EmptyGraph);
    }
    let count = instance_count(cfg.max_vertices, cfg.pool.len());
    if cfg.max_vertices > MAX_BRUTE_VERTICES || count > MAX_SWEEP_INSTANCES {
        return Err(Error::GuardExceeded {
            what: "sweep instances",
            value: usize::try_from(count).unwrap_or(usize::MAX),
            limit: MAX_SWEEP_INSTANCES as usize,
        });
    }
    let mut report = SweepReport {
        instances: 0,
        weo_admitting: 0,
        agreeing: 0,
        disagreements: Vec::new(),
        disagreement_count: 0,
        sample_size: cfg.samples,
        sample_supersolvable: 0,
        sample_agreeing: 0,
        sample_disagreements: Vec::new(),
    };
    for n in 1..=cfg.max_vertices {
        for_each_labeled(n, &cfg.pool, |g| {
            let v = verdicts(&g)?;
            report.instances += 1;
            report.weo_admitting += u64::from(v.weo);
            if v.agree() {
                report.agreeing += 1;
            } else {
                report.disagreement_count += 1;
                push_sorted(&mut report.disagreements, set_graph_to_json(&g));
            }
            Ok(())
        })?;
    }
    let mut rng = rng_from_seed(cfg.seed);
    for _ in 0..cfg.samples {
        let n = rand::Rng::gen_range(&mut rng, 1..=cfg.max_vertices);
        let g = random_set_graph(&mut rng, n, &cfg.pool);
        let ss = lattice_supersolvable(&g, guard)?;
        report.sample_supersolvable += u64::from(ss);
        if ss == weo_exists_brute(&g)? {
            report.sample_agreeing += 1;
        } else {
            push_sorted(&mut report.sample_disagreements, set_graph_to_json(&g));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ws(a: &[i64]) -> WeightSet {
        WeightSet::ints(a)
    }

    #[test]
    fn pool_parsing() {
        let p = parse_weight_pool("∅,{0},{1},{0,1}").unwrap();
        assert_eq!(p, vec![WeightSet::empty(), ws(&[0]), ws(&[1]), ws(&[0, 1])]);
        assert_eq!(parse_weight_pool("{}, {1/2, 3}").unwrap()[1].to_string(), "{1/2,3}");
        assert!(parse_weight_pool("{0").is_err());
        assert!(parse_weight_pool("0").is_err());
        assert!(parse_weight_pool("{0.5}").is_err());
    }

    #[test]
    fn counts() {
        assert_eq!(instance_count(1, 4), 4);
        assert_eq!(instance_count(2, 4), 4 + 2 * 16);
        let mut seen = 0;
        for_each_labeled(3, &[WeightSet::empty(), ws(&[0])], |_| {
            seen += 1;
            Ok(())
        })
        .unwrap();
        assert_eq!(seen, 8 * 8);
    }

    #[test]
    fn brute_force_orderings() {
        let valley = SetGraph::new(vec![ws(&[0, 1]), ws(&[0]), ws(&[0, 1])], &[(0, 1), (1, 2)]).unwrap();
        assert!(!weo_exists_brute(&valley).unwrap());
        assert!(!no_forbidden_paths(&valley));
        assert!(!all_paths_unimodal(&valley));
        let hill = SetGraph::new(vec![ws(&[0]), ws(&[0, 1]), ws(&[0])], &[(0, 1), (1, 2)]).unwrap();
        let v = verdicts(&hill).unwrap();
        assert!(v.weo && v.agree());
    }

    #[test]
    fn small_sweep_agrees() {
        let cfg = SweepConfig {
            max_vertices: 3,
            pool: parse_weight_pool("∅,{0},{1},{0,1}").unwrap(),
            samples: 10,
            seed: 0,
        };
        let r = run_sweep(&cfg, &LatticeGuard::default()).unwrap();
        assert_eq!(r.instances, 4 + 2 * 16 + 8 * 64);
        assert!(r.all_agree(), "{:?}", r.to_json(&cfg));
        assert!(r.weo_admitting > 0 && r.weo_admitting < r.instances);
    }
}
