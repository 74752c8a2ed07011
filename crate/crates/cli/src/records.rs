use std::io::Write;
use std::path::Path;

use anyhow::Result;
use positroid_lab::cluster::{build_seed, facet_arcs};
use positroid_lab::plabic::enumerate_subdivisions;
use positroid_lab::tilings::tile_chamber_set;
use positroid_lab::{BicoloredSubdivision, ChamberIndex};
use serde_json::{json, Value};

use crate::{arg_error, open_out};

fn parse_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<usize>().map_err(|_| arg_error(format!("bad label {t:?}"))))
        .collect()
}

/// `N`, `N:1,2,3;4,5,6` (black polygons) or `kermit:N:2,3,5`.
pub fn parse_object(text: &str) -> Result<BicoloredSubdivision> {
    let parts: Vec<&str> = text.split(':').collect();
    let n_of = |t: &str| t.trim().parse::<usize>().map_err(|_| arg_error(format!("bad polygon size {t:?}")));
    let made = match parts.as_slice() {
        ["kermit", n, set] => BicoloredSubdivision::kermit(&parse_list(set)?, n_of(n)?),
        [n] => BicoloredSubdivision::new(n_of(n)?, Vec::new()),
        [n, polys] => {
            let black = polys.split(';').filter(|p| !p.trim().is_empty()).map(parse_list).collect::<Result<Vec<_>>>()?;
            BicoloredSubdivision::new(n_of(n)?, black)
        }
        _ => return Err(arg_error(format!("cannot parse subdivision {text:?}"))),
    };
    made.map_err(|e| arg_error(format!("{text}: {e}")))
}

pub fn parse_sides(s: &str) -> Result<Vec<(usize, usize)>> {
    s.split(',')
        .map(|side| {
            let (a, b) = side.split_once('-').ok_or_else(|| arg_error(format!("bad side {side:?}, expected a-b")))?;
            let p = |t: &str| t.trim().parse::<usize>().map_err(|_| arg_error(format!("bad side {side:?}")));
            Ok((p(a)?, p(b)?))
        })
        .collect()
}

pub fn tile_record(s: &BicoloredSubdivision, index: &ChamberIndex) -> Result<Value> {
    let hyp = s.dual_tree().trip_permutation()?;
    let amp = s.ghat().trip_permutation()?;
    let facets = facet_arcs(s);
    let chords: Vec<Value> = s
        .facet_arcs()
        .iter()
        .map(|&(h, j)| {
            let (a, b) = (h.min(j), h.max(j));
            json!({ "arc": [h, j], "chord": [a, b], "area": s.area(a, b), "boundary": facets.boundary.contains(&(h, j)) })
        })
        .collect();
    let chambers = index.words_of(&tile_chamber_set(index, s)?);
    Ok(json!({
        "k": s.k(),
        "n": s.n(),
        "black": s.black(),
        "white": s.white_polygons(),
        "hypersimplex_trip": hyp.to_string(),
        "amplituhedron_trip": amp.to_string(),
        "facet_arcs": chords,
        "chambers": chambers,
    }))
}

pub fn cmd_tiles(k: usize, n: usize, out: Option<&Path>) -> Result<()> {
    let index = ChamberIndex::new(k, n)?;
    let mut w = open_out(out)?;
    for s in enumerate_subdivisions(k, n)? {
        writeln!(w, "{}", serde_json::to_string(&tile_record(&s, &index)?)?)?;
    }
    w.flush()?;
    Ok(())
}

pub fn cmd_seed(object: &str, distinguished: Option<&str>, out: Option<&Path>) -> Result<()> {
    let s = parse_object(object)?;
    let sides = distinguished.map(parse_sides).transpose()?;
    let seed = build_seed(&s.canonical_triangulation(), sides.as_deref()).map_err(|e| arg_error(e.to_string()))?;
    let arrows: Vec<Value> = seed
        .quiver
        .labelled_arrows()
        .into_iter()
        .map(|((from, to), m)| json!({ "from": [from.0, from.1], "to": [to.0, to.1], "multiplicity": m }))
        .collect();
    let record = json!({
        "version": crate::VERSION,
        "subdivision": s,
        "size": seed.size(),
        "cartan_type": seed.cartan_type().iter().map(|m| format!("A{m}")).collect::<Vec<_>>(),
        "vertices": seed.quiver.vertices,
        "arrows": arrows,
        "distinguished": seed.distinguished,
    });
    let mut w = open_out(out)?;
    writeln!(w, "{}", serde_json::to_string_pretty(&record)?)?;
    w.flush()?;
    Ok(())
}
