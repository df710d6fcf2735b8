use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};

use lfree::construct::{
    behrend_set, integer_l222_construction, l222_prime, mixed_radix_embed, random_deletion_retry, zp3_construction,
};
use lfree::detect::{contains_sumset, enumerate_sumsets};
use lfree::hypergraph::{best_translate, cayley_hypergraph, contains_complete_rpartite, r_counts, Hypergraph};
use lfree::search::{
    interval_profile, lower_bound_exponent, max_free_set, overlap_check, turan_upper_bound, upper_bound_leading,
    SearchOptions,
};
use lfree::sequences::{
    counting_function, dyadic_random_sequence, greedy_sequence, liminf_statistic, sidecar, DyadicParams,
    SequencePrefix, Provenance,
};
use lfree::setfile::{read_set_file, write_set_file};
use lfree::{Ambient, Error, GroundSet, Signature};

use crate::cli::{AmbientArgs, Command, Construct, Hyper, Sequence};
use crate::render::{Report, Table};

fn signature(s: &str) -> Result<Signature> {
    Ok(s.parse::<Signature>()?)
}

fn load(path: &Path) -> Result<GroundSet> {
    read_set_file(path).with_context(|| format!("reading {}", path.display()))
}

fn save(path: Option<&Path>, set: &GroundSet) -> Result<()> {
    if let Some(p) = path {
        write_set_file(p, set).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

fn ambient(args: &AmbientArgs) -> Result<Ambient> {
    Ok(match (&args.n, &args.moduli) {
        (Some(n), None) => Ambient::interval(*n)?,
        (None, Some(m)) => Ambient::product(m.clone())?,
        _ => bail!(Error::InvalidInput("give exactly one of --n and --moduli".into())),
    })
}

fn set_json(set: &GroundSet) -> Value {
    json!({
        "ambient": set.ambient().describe(),
        "size": set.len(),
        "elements": set.elements(),
    })
}

pub fn run(command: &Command) -> Result<Report> {
    match command {
        Command::Detect { set, signature: s } => {
            let set = load(set)?;
            let sig = signature(s)?;
            let w = contains_sumset(&set, &sig);
            Ok(Report::json(json!({ "free": w.is_none(), "witness": w })))
        }
        Command::Enumerate {
            set,
            signature: s,
            max_decompositions,
        } => {
            let set = load(set)?;
            let sig = signature(s)?;
            let all = enumerate_sumsets(&set, &sig, *max_decompositions)?;
            Ok(Report::json(json!({ "count": all.len(), "witnesses": all })))
        }
        Command::Search {
            ambient: a,
            signature: s,
            max_nodes,
            allow_large,
            profile,
        } => {
            let amb = ambient(a)?;
            let sig = signature(s)?;
            let opts = SearchOptions {
                allow_large: *allow_large,
                max_nodes: Some(*max_nodes),
                ..SearchOptions::default()
            };
            let report = max_free_set(&amb, &sig, &opts)?;
            let mut js = report.to_json(&sig);
            if *profile {
                if amb.is_group() {
                    bail!(Error::InvalidInput("--profile needs an interval ambient".into()));
                }
                js["profile"] = json!(interval_profile(amb.cardinality(), &sig, &opts)?);
            }
            let mut t = Table::new(&["ambient", "signature", "F", "nodes", "ms"]);
            t.push(vec![
                amb.describe(),
                sig.to_string(),
                report.best_size.to_string(),
                report.nodes_explored.to_string(),
                report.runtime.as_millis().to_string(),
            ]);
            Ok(Report::with_table(js, t))
        }
        Command::Bounds { n, signature: s, a, b, x, r } => bounds(*n, s.as_deref(), a, b, x, *r),
        Command::Construct(c) => construct(c),
        Command::Hypergraph(h) => hypergraph(h),
        Command::Sequence(s) => sequence(s),
    }
}

fn bounds(
    n: Option<u64>,
    s: Option<&str>,
    a: &Option<Vec<i64>>,
    b: &Option<Vec<i64>>,
    x: &Option<Vec<i64>>,
    r: Option<usize>,
) -> Result<Report> {
    if let (Some(a), Some(b), Some(x)) = (a, b, x) {
        let r = r.ok_or_else(|| Error::InvalidInput("--r is required with --a/--b/--x".into()))?;
        let (lhs, rhs) = overlap_check(a, b, x, r)?;
        return Ok(Report::json(json!({ "lhs": lhs, "rhs": rhs, "holds": lhs >= rhs })));
    }
    let (Some(n), Some(s)) = (n, s) else {
        bail!(Error::InvalidInput("bounds needs --n and --signature, or --a/--b/--x/--r".into()));
    };
    let sig = signature(s)?;
    let e = lower_bound_exponent(&sig)?;
    let upper = upper_bound_leading(n, &sig)?;
    let turan = turan_upper_bound(n, &sig)?;
    Ok(Report::json(json!({
        "n": n,
        "signature": sig.lengths(),
        "upper_leading": upper,
        "lower_exponent": e.to_string(),
        "lower_leading": (n as f64).powf(e.to_f64()),
        "turan_leading": turan,
    })))
}

fn construct(c: &Construct) -> Result<Report> {
    match c {
        Construct::Behrend { n, save: out } => {
            let b = behrend_set(*n)?;
            save(out.as_deref(), &b)?;
            Ok(Report::json(set_json(&b)))
        }
        Construct::Random {
            n,
            signature: s,
            seed,
            attempts,
            save: out,
        } => {
            let sig = signature(s)?;
            let rep = random_deletion_retry(*n, &sig, *seed, *attempts)?;
            save(out.as_deref(), &rep.result)?;
            let mut js = rep.to_json();
            js["typical"] = json!(rep.typical());
            js["elements"] = json!(rep.result.elements());
            Ok(Report::json(js))
        }
        Construct::Zp3 { p, embed, save: out } => {
            let a = zp3_construction(*p)?;
            let a = if *embed { mixed_radix_embed(&a)? } else { a };
            save(out.as_deref(), &a)?;
            let mut js = set_json(&a);
            js["p"] = json!(p);
            Ok(Report::json(js))
        }
        Construct::Embed { set, save: out } => {
            let e = mixed_radix_embed(&load(set)?)?;
            save(out.as_deref(), &e)?;
            Ok(Report::json(set_json(&e)))
        }
        Construct::L222 { n, save: out } => {
            let p = l222_prime(*n)?;
            let a = integer_l222_construction(*n)?;
            save(out.as_deref(), &a)?;
            let mut js = set_json(&a);
            js["p"] = json!(p);
            Ok(Report::json(js))
        }
    }
}

fn hypergraph(h: &Hyper) -> Result<Report> {
    match h {
        Hyper::Build {
            set,
            r,
            max_subsets,
            save: out,
        } => {
            let g = cayley_hypergraph(&load(set)?, *r, *max_subsets)?;
            if let Some(p) = out {
                std::fs::write(p, g.to_text()).with_context(|| format!("writing {}", p.display()))?;
            }
            Ok(Report::json(json!({
                "n": g.n(),
                "r": g.r(),
                "edge_count": g.edge_count(),
                "edges": g.edges(),
            })))
        }
        Hyper::Check { hypergraph, signature: s } => {
            let text = std::fs::read_to_string(hypergraph)
                .with_context(|| format!("reading {}", hypergraph.display()))?;
            let g = Hypergraph::parse(&text)?;
            let classes = contains_complete_rpartite(&g, &signature(s)?)?;
            Ok(Report::json(json!({ "free": classes.is_none(), "classes": classes })))
        }
        Hyper::BestTranslate { set, r } => {
            let a = load(set)?;
            let (x, count) = best_translate(&a, *r)?;
            let total: u64 = r_counts(a.ambient(), *r)?.iter().sum();
            let average = a.len() as f64 * total as f64 / a.ambient().cardinality() as f64;
            Ok(Report::json(json!({ "x": x, "edges": count, "average": average })))
        }
    }
}

fn statistics_table(prefix: &SequencePrefix, xs: &[u64]) -> Result<Table> {
    let mut t = Table::new(&["x", "A", "liminf_stat"]);
    let vals = liminf_statistic(prefix, xs)?;
    for (&x, v) in xs.iter().zip(vals) {
        t.push(vec![x.to_string(), counting_function(prefix, x).to_string(), format!("{v:.6}")]);
    }
    Ok(t)
}

fn sequence(s: &Sequence) -> Result<Report> {
    match s {
        Sequence::Greedy {
            signature: s,
            limit,
            at,
            save: out,
        } => {
            let sig = signature(s)?;
            let prefix = greedy_sequence(&sig, *limit)?;
            save(out.as_deref(), &prefix.to_set())?;
            let mut js = sidecar(&prefix, &[], at)?;
            js["terms"] = json!(prefix.terms);
            let mut t = Table::new(&["index", "term"]);
            for (i, v) in prefix.terms.iter().enumerate() {
                t.push(vec![(i + 1).to_string(), v.to_string()]);
            }
            Ok(Report::with_table(js, t))
        }
        Sequence::Dyadic {
            signature: s,
            epsilon,
            m_min,
            m_max,
            seed,
            max_decompositions,
            at,
            save: out,
        } => {
            let sig = signature(s)?;
            let params = DyadicParams::new(&sig, *epsilon, *m_min, *m_max, *seed)?;
            let run = dyadic_random_sequence(&sig, &params, *max_decompositions)?;
            save(out.as_deref(), &run.prefix.to_set())?;
            let mut js = sidecar(&run.prefix, &run.blocks, at)?;
            js["terms"] = json!(run.prefix.terms);
            js["experimental"] = json!(run.experimental);
            let mut t = Table::new(&["m", "|S|", "N", "retained"]);
            for b in &run.blocks {
                t.push(vec![
                    b.m.to_string(),
                    b.sampled.to_string(),
                    b.obstructions.to_string(),
                    b.retained.to_string(),
                ]);
            }
            Ok(Report::with_table(js, t))
        }
        Sequence::Stats { set, signature: s, at } => {
            let sig = signature(s)?;
            let a = load(set)?;
            let ints = a
                .ints()
                .ok_or_else(|| Error::InvalidInput("sequence files hold integers".into()))?;
            if ints.first().is_some_and(|&v| v < 1) {
                bail!(Error::InvalidInput("sequence terms must be positive".into()));
            }
            let prefix = SequencePrefix {
                terms: ints.iter().map(|&v| v as u64).collect(),
                signature: sig,
                provenance: Provenance::Greedy { limit: 0 },
            };
            let mut js = sidecar(&prefix, &[], at)?;
            js["provenance"] = json!("file");
            Ok(Report::with_table(js, statistics_table(&prefix, at)?))
        }
    }
}
