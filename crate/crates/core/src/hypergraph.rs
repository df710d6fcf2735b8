//! Cayley sum hypergraphs and complete `r`-partite subhypergraphs.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::ambient::{Ambient, Element, Radix};
use crate::error::{Error, Result};
use crate::set::GroundSet;
use crate::signature::Signature;

/// Default cap on the number of `r`-subsets enumerated for a Cayley hypergraph.
pub const DEFAULT_SUBSET_BUDGET: u64 = 50_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    r: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Edges are normalized to sorted vertex lists and sorted among
    /// themselves.
    pub fn new(n: usize, r: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidInput("uniformity must be at least 1".into()));
        }
        let mut set = BTreeSet::new();
        for mut e in edges {
            e.sort_unstable();
            if e.len() != r {
                return Err(Error::Structural(format!("edge {e:?} does not have {r} vertices")));
            }
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Structural(format!("edge {e:?} repeats a vertex")));
            }
            if e.last().is_some_and(|&v| v >= n) {
                return Err(Error::Structural(format!("edge {e:?} leaves [0,{n})")));
            }
            if !set.insert(e.clone()) {
                return Err(Error::Structural(format!("edge {e:?} repeated")));
            }
        }
        Ok(Hypergraph {
            n,
            r,
            edges: set.into_iter().collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("#hypergraph n={} r={}\n", self.n, self.r);
        for e in &self.edges {
            let line: Vec<String> = e.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut header = None;
        let mut edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let lineno = i + 1;
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("#hypergraph") {
                let (mut n, mut r) = (None, None);
                for tok in rest.split_whitespace() {
                    let bad = || Error::Parse {
                        line: lineno,
                        msg: format!("bad header field {tok:?}"),
                    };
                    let (k, v) = tok.split_once('=').ok_or_else(bad)?;
                    let v: usize = v.parse().map_err(|_| bad())?;
                    match k {
                        "n" => n = Some(v),
                        "r" => r = Some(v),
                        _ => return Err(bad()),
                    }
                }
                match (n, r) {
                    (Some(n), Some(r)) => header = Some((n, r)),
                    _ => {
                        return Err(Error::Parse {
                            line: lineno,
                            msg: "header needs n= and r=".into(),
                        })
                    }
                }
                continue;
            }
            if line.starts_with('#') {
                continue;
            }
            if header.is_none() {
                return Err(Error::Parse {
                    line: lineno,
                    msg: "edge before #hypergraph header".into(),
                });
            }
            let e = line
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::Parse {
                    line: lineno,
                    msg: e.to_string(),
                })?;
            edges.push(e);
        }
        let (n, r) = header.ok_or(Error::Parse {
            line: 0,
            msg: "missing #hypergraph header".into(),
        })?;
        Hypergraph::new(n, r, edges)
    }
}

fn group_radix(ambient: &Ambient) -> Result<Radix> {
    match ambient {
        Ambient::Product { moduli } => Ok(Radix::new(moduli)),
        Ambient::Interval { .. } => Err(Error::InvalidInput("Cayley hypergraphs need a group ambient".into())),
    }
}

fn binomial(n: u64, k: u64) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Edges: the `r`-subsets of distinct group elements whose sum lies in `set`.
pub fn cayley_hypergraph(set: &GroundSet, r: usize, budget: u64) -> Result<Hypergraph> {
    let radix = group_radix(set.ambient())?;
    if r < 2 {
        return Err(Error::InvalidInput(format!("uniformity {r} < 2")));
    }
    let n = radix.order();
    let subsets = binomial(n as u64, r as u64);
    if subsets > budget as f64 {
        return Err(Error::Resource(format!("{subsets:.3e} {r}-subsets exceed budget {budget}")));
    }
    let mut edges = Vec::new();
    let mut chosen = Vec::with_capacity(r);
    fn rec(
        radix: &Radix,
        set: &GroundSet,
        r: usize,
        from: usize,
        sum: usize,
        chosen: &mut Vec<usize>,
        edges: &mut Vec<Vec<usize>>,
    ) {
        if chosen.len() == r {
            if set.bits().contains(sum) {
                edges.push(chosen.clone());
            }
            return;
        }
        for v in from..radix.order() {
            if radix.order() - v < r - chosen.len() {
                break;
            }
            chosen.push(v);
            rec(radix, set, r, v + 1, radix.add(sum, v), chosen, edges);
            chosen.pop();
        }
    }
    rec(&radix, set, r, 0, 0, &mut chosen, &mut edges);
    Ok(Hypergraph { n, r, edges })
}

/// `R_r(y)`: the number of `r`-subsets of distinct elements summing to `y`,
/// indexed by `y`.
pub fn r_counts(ambient: &Ambient, r: usize) -> Result<Vec<u64>> {
    let radix = group_radix(ambient)?;
    let n = radix.order();
    // dp[k][y]: k-subsets of the elements seen so far with sum y
    let mut dp = vec![vec![0u64; n]; r + 1];
    dp[0][0] = 1;
    for v in 0..n {
        for k in (1..=r).rev() {
            let (lo, hi) = dp.split_at_mut(k);
            let prev = &lo[k - 1];
            for (y, &c) in prev.iter().enumerate() {
                if c > 0 {
                    hi[0][radix.add(y, v)] += c;
                }
            }
        }
    }
    Ok(dp.pop().expect("r+1 rows"))
}

/// The translate `x` maximizing the edge count of the Cayley hypergraph of
/// `A + x`, first in index order on ties, with that count.
pub fn best_translate(set: &GroundSet, r: usize) -> Result<(Element, u64)> {
    let radix = group_radix(set.ambient())?;
    if r < 2 {
        return Err(Error::InvalidInput(format!("uniformity {r} < 2")));
    }
    let counts = r_counts(set.ambient(), r)?;
    let members: Vec<usize> = set.bits().iter().collect();
    let mut best: Option<(usize, u64)> = None;
    for x in 0..radix.order() {
        let total: u64 = members.iter().map(|&a| counts[radix.add(a, x)]).sum();
        if best.is_none_or(|(_, c)| total > c) {
            best = Some((x, total));
        }
    }
    let best = best.expect("nonempty group");
    Ok((set.ambient().element_at(best.0), best.1))
}

/// Disjoint classes `V₁,…,Vᵣ` with `|Vᵢ| = ℓᵢ` all of whose transversals are
/// edges, first in lexicographic class order.
pub fn contains_complete_rpartite(h: &Hypergraph, sig: &Signature) -> Result<Option<Vec<Vec<usize>>>> {
    if h.r != sig.r() {
        return Err(Error::InvalidInput(format!(
            "hypergraph is {}-uniform but the signature has r = {}",
            h.r,
            sig.r()
        )));
    }
    if (h.n as u64) < sig.sum() as u64 {
        return Ok(None);
    }
    let mut classes = Vec::new();
    let found = search_classes(h.edges.clone(), sig.lengths(), &mut classes);
    Ok(found.then_some(classes))
}

/// `edges` are sorted `k`-sets; `lengths` has `k` entries.
fn search_classes(edges: Vec<Vec<usize>>, lengths: &[usize], classes: &mut Vec<Vec<usize>>) -> bool {
    let l = lengths[0];
    if lengths.len() == 1 {
        let verts: Vec<usize> = edges.iter().map(|e| e[0]).collect();
        if verts.len() >= l {
            classes.push(verts[..l].to_vec());
            return true;
        }
        return false;
    }
    // link of v: the (k−1)-sets T with T ∪ {v} an edge
    let mut vertices: Vec<usize> = edges.iter().flatten().copied().collect();
    vertices.sort_unstable();
    vertices.dedup();
    let link = |v: usize| -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = edges
            .iter()
            .filter(|e| e.contains(&v))
            .map(|e| e.iter().copied().filter(|&u| u != v).collect())
            .collect();
        out.sort();
        out
    };
    let links: Vec<(usize, Vec<Vec<usize>>)> = vertices
        .into_iter()
        .map(|v| (v, link(v)))
        .filter(|(_, lk)| !lk.is_empty())
        .collect();
    let mut chosen = Vec::with_capacity(l);
    choose_class(&links, 0, None, l, &lengths[1..], &mut chosen, classes)
}

fn choose_class(
    links: &[(usize, Vec<Vec<usize>>)],
    from: usize,
    common: Option<Vec<Vec<usize>>>,
    l: usize,
    rest: &[usize],
    chosen: &mut Vec<usize>,
    classes: &mut Vec<Vec<usize>>,
) -> bool {
    if chosen.len() == l {
        let common = common.unwrap_or_default();
        classes.push(chosen.clone());
        if search_classes(common, rest, classes) {
            return true;
        }
        classes.pop();
        return false;
    }
    for i in from..links.len() {
        if links.len() - i < l - chosen.len() {
            break;
        }
        let (v, lk) = &links[i];
        let next: Vec<Vec<usize>> = match &common {
            None => lk.clone(),
            Some(c) => c.iter().filter(|t| lk.binary_search(t).is_ok()).cloned().collect(),
        };
        if next.is_empty() {
            continue;
        }
        chosen.push(*v);
        if choose_class(links, i + 1, Some(next), l, rest, chosen, classes) {
            return true;
        }
        chosen.pop();
    }
    false
}
