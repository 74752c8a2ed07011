use std::collections::BTreeSet;
use std::io::Write;

use anyhow::Result;
use positroid_lab::tilings::{
    chamber_status, compatibility_graph_with, count_tilings, descent_tiling, enumerate_tilings, thread_pool,
};
use positroid_lab::{ChamberIndex, ChamberSet, CompatGraph, Tiling};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::{arg_error, check_shape, load_z, open_out, Mode, TilingsArgs};

/// Compatibility graphs above this many tiles need `--long`.
const LONG_THRESHOLD: usize = 200;

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn pairwise_disjoint(g: &CompatGraph, t: &Tiling) -> bool {
    t.tiles.iter().enumerate().all(|(i, &a)| t.tiles[i + 1..].iter().all(|&b| g.chambers[a].is_disjoint(&g.chambers[b])))
}

fn covers_all(g: &CompatGraph, t: &Tiling) -> bool {
    let mut union = ChamberSet::empty(g.index.len());
    t.tiles.iter().for_each(|&i| union.union_with(&g.chambers[i]));
    union.count() == g.index.len()
}

pub fn cmd_tilings(a: &TilingsArgs) -> Result<bool> {
    check_shape(a.k, a.n)?;
    let z = load_z(&a.z, a.k, a.n)?;
    if a.sporadic && a.mode != Mode::Amplituhedron {
        return Err(arg_error("--sporadic needs --mode amplituhedron"));
    }
    let index = ChamberIndex::new(a.k, a.n)?;
    let len = index.len();
    let (empty, exact) = match a.mode {
        Mode::Hypersimplex => (ChamberSet::empty(len), true),
        Mode::Amplituhedron => {
            let (empty, _, exact) = thread_pool().install(|| chamber_status(&index, &z, a.samples, a.seed))?;
            (empty, exact)
        }
    };
    let empty_words = index.words_of(&empty);
    let g = thread_pool().install(|| compatibility_graph_with(index, empty.clone()))?;
    if g.vertex_count() > LONG_THRESHOLD && !a.long {
        return Err(arg_error(format!(
            "({}, {}) has {} tiles; pass --long to run this search",
            a.k,
            a.n,
            g.vertex_count()
        )));
    }
    let cover = ChamberSet::full(len).minus(&empty);
    let mode = match a.mode {
        Mode::Hypersimplex => "hypersimplex",
        Mode::Amplituhedron => "amplituhedron",
    };
    let mut w = open_out(a.out.as_deref())?;

    if a.count_only && !a.sporadic {
        let count = count_tilings(&g, &cover);
        let record = json!({
            "version": crate::VERSION, "k": a.k, "n": a.n, "mode": mode, "z": a.z, "seed": a.seed,
            "exact_emptiness": exact, "empty_chambers": empty_words, "count": count,
        });
        writeln!(w, "{record}")?;
        w.flush()?;
        return Ok(true);
    }

    let tilings = enumerate_tilings(&g, &cover);
    let labels: Vec<(String, String)> = thread_pool().install(|| {
        g.tiles
            .par_iter()
            .map(|s| {
                let hyp = s.dual_tree().trip_permutation().map(|p| p.to_string()).unwrap_or_default();
                let amp = s.ghat().trip_permutation().map(|p| p.to_string()).unwrap_or_default();
                (hyp, amp)
            })
            .collect()
    });
    let descent: BTreeSet<usize> = descent_tiling(a.k, a.n)?.iter().filter_map(|s| g.position(s)).collect();
    let regular_size = binom(a.n - 2, a.k);
    let mut emitted = 0usize;
    for (i, t) in tilings.iter().enumerate() {
        let sporadic = a.mode == Mode::Amplituhedron && !(pairwise_disjoint(&g, t) && covers_all(&g, t));
        if a.sporadic && !sporadic {
            continue;
        }
        emitted += 1;
        if a.count_only {
            continue;
        }
        let tiles: Vec<Value> = t
            .tiles
            .iter()
            .map(|&v| {
                json!({
                    "black": g.tiles[v].black(),
                    "hypersimplex_trip": labels[v].0,
                    "amplituhedron_trip": labels[v].1,
                })
            })
            .collect();
        let mut record = json!({
            "index": i,
            "k": a.k,
            "n": a.n,
            "mode": mode,
            "size": t.tiles.len(),
            "descent": t.tiles.iter().copied().collect::<BTreeSet<_>>() == descent,
            "regular_heuristic": t.tiles.len() == regular_size,
            "tiles": tiles,
        });
        if a.mode == Mode::Amplituhedron {
            record["sporadic"] = json!(sporadic);
        }
        writeln!(w, "{record}")?;
    }
    if a.count_only {
        let record = json!({
            "version": crate::VERSION, "k": a.k, "n": a.n, "mode": mode, "z": a.z, "seed": a.seed,
            "exact_emptiness": exact, "empty_chambers": empty_words, "sporadic_count": emitted,
        });
        writeln!(w, "{record}")?;
    }
    w.flush()?;
    eprintln!(
        "positroid-lab {}: ({}, {}) {mode} mode, {} tilings, {emitted} emitted, empty chambers {:?} (exact: {exact})",
        crate::VERSION,
        a.k,
        a.n,
        tilings.len(),
        empty_words
    );
    Ok(true)
}
