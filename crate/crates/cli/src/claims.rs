use std::io::Write;

use anyhow::Result;
use positroid_lab::amplituhedron::{
    chamber_nonempty_k1, chamber_of, compatible_signs_hold, membership_signflip, point_in_tile, random_tp_matrix,
    random_weights, realize_chamber, sample_cell_point, tnn_representative, twistor_matrix,
};
use positroid_lab::cluster::{
    adjacency_sign_failures, check_adjacency, hypersimplex_adjacency_failures, positive_part_check, verify_exchange,
};
use positroid_lab::exact::rat;
use positroid_lab::hypersimplex::{
    barycentric_in_simplex, simplex_in_polytope, simplex_in_tree_by_area, simplex_in_tree_by_parity, tree_polytope,
    w_simplex,
};
use positroid_lab::permutations::enumerate_d;
use positroid_lab::plabic::enumerate_subdivisions;
use positroid_lab::subset;
use positroid_lab::tilings::{descent_tiling, tduality_transfer, thread_pool, verify_tiling};
use positroid_lab::{BicoloredSubdivision, Rational, TwistorTable, Verdict, VerifyMode, YPoint, ZMatrix};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::{arg_error, check_shape, load_z, open_out, rng, Claim, VerifyArgs};

#[derive(Serialize)]
struct Report {
    claim: String,
    version: &'static str,
    seed: u64,
    k: usize,
    n: usize,
    z: String,
    samples: usize,
    checks: usize,
    failures: usize,
    pass: bool,
    details: Value,
}

struct Tally {
    checks: usize,
    failures: usize,
    details: Value,
}

impl Tally {
    fn new(checks: usize, failures: usize) -> Self {
        Tally { checks, failures, details: Value::Null }
    }

    fn with(mut self, details: Value) -> Self {
        self.details = details;
        self
    }
}

fn sum(parts: impl ParallelIterator<Item = (usize, usize)>) -> (usize, usize) {
    parts.reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1))
}

/// Tiles paired with a per-tile seed drawn from the master generator.
fn seeded_tiles(k: usize, n: usize, seed: u64) -> Result<Vec<(u64, BicoloredSubdivision)>> {
    let mut master = rng(seed);
    Ok(enumerate_subdivisions(k, n)?.into_iter().map(|s| (master.gen(), s)).collect())
}

fn needs_positive_k(k: usize) -> Result<()> {
    if k == 0 {
        return Err(arg_error("this claim needs k >= 1"));
    }
    Ok(())
}

fn sign1(a: &VerifyArgs, z: &ZMatrix) -> Result<Tally> {
    needs_positive_k(a.k)?;
    let tiles = seeded_tiles(a.k, a.n, a.seed)?;
    let (checks, failures) = sum(tiles.par_iter().map(|(seed, s)| {
        let mut r = rng(*seed);
        let ts = s.triangulations();
        let bad = (0..a.samples)
            .filter(|_| {
                let t = &ts[r.gen_range(0..ts.len())];
                let c = sample_cell_point(t, &random_weights(&mut r, 3 * a.k)).expect("positive weights");
                let table = TwistorTable::new(&YPoint::from_c(&c, z).expect("full rank"), z);
                !(compatible_signs_hold(&table, s) && point_in_tile(&table, s))
            })
            .count();
        (a.samples, bad)
    }));
    Ok(Tally::new(checks, failures).with(json!({ "tiles": tiles.len() })))
}

fn nicerep(a: &VerifyArgs, z: &ZMatrix) -> Result<Tally> {
    needs_positive_k(a.k)?;
    let tiles = seeded_tiles(a.k, a.n, a.seed)?;
    let (checks, failures) = sum(tiles.par_iter().map(|(seed, s)| {
        let mut r = rng(*seed);
        let ts = s.triangulations();
        let bad = (0..a.samples)
            .filter(|_| {
                let t = &ts[r.gen_range(0..ts.len())];
                let c = sample_cell_point(t, &random_weights(&mut r, 3 * a.k)).expect("positive weights");
                let table = TwistorTable::new(&YPoint::from_c(&c, z).expect("full rank"), z);
                let ctw = tnn_representative(&twistor_matrix(&table, t));
                let ratio = YPoint::from_c(&ctw, z).ok().and_then(|back| table.ratio_to(&TwistorTable::new(&back, z)));
                !ratio.is_some_and(|l| l > rat(0))
            })
            .count();
        (a.samples, bad)
    }));
    Ok(Tally::new(checks, failures).with(json!({ "tiles": tiles.len() })))
}

fn main1(a: &VerifyArgs, z: &ZMatrix) -> Result<Tally> {
    needs_positive_k(a.k)?;
    let mut master = rng(a.seed);
    let seeds: Vec<u64> = (0..a.samples).map(|_| master.gen()).collect();
    let (checks, failures) = sum(seeds.par_iter().map(|&seed| {
        let mut r = rng(seed);
        let y = YPoint::from_c(&random_tp_matrix(&mut r, a.k, a.n), z).expect("full rank");
        let table = TwistorTable::new(&y, z);
        let bad = (1..=a.n).filter(|&anchor| !membership_signflip(&table, anchor)).count();
        (a.n, bad)
    }));
    Ok(Tally::new(checks, failures).with(json!({ "anchors": a.n })))
}

/// Interior points of each tree polytope lie only in w-simplices contained in it.
fn wcover(a: &VerifyArgs) -> Result<Tally> {
    let simplices = enumerate_d(a.k, a.n)?.iter().map(w_simplex).collect::<positroid_lab::Result<Vec<_>>>()?;
    let tiles = seeded_tiles(a.k, a.n, a.seed)?;
    let (checks, failures) = sum(tiles.par_iter().map(|(seed, s)| {
        let mut r = rng(*seed);
        let poly = tree_polytope(s).expect("tree polytope");
        let bases: Vec<_> = poly.bases().iter().copied().collect();
        let bad = (0..a.samples)
            .filter(|_| {
                let weights = random_weights(&mut r, bases.len());
                let total: Rational = weights.iter().sum();
                let mut x = vec![rat(0); a.n];
                for (b, wt) in bases.iter().zip(&weights) {
                    for i in subset::labels(*b) {
                        x[i - 1] += wt / &total;
                    }
                }
                let hits: Vec<_> = simplices.iter().filter(|ws| barycentric_in_simplex(ws, &x).is_some()).collect();
                hits.is_empty() || !hits.iter().all(|ws| simplex_in_polytope(ws, &poly))
            })
            .count();
        (a.samples, bad)
    }));
    Ok(Tally::new(checks, failures).with(json!({ "tiles": tiles.len(), "simplices": simplices.len() })))
}

fn adjacency(a: &VerifyArgs, z: &ZMatrix) -> Result<Tally> {
    let tiles = seeded_tiles(a.k, a.n, a.seed)?;
    let rows: Vec<(usize, usize, usize)> = tiles
        .par_iter()
        .map(|(seed, s)| {
            let mut r = rng(*seed);
            let structural = usize::from(!check_adjacency(s).holds());
            let signs = if a.k >= 1 { adjacency_sign_failures(s, z, a.samples, &mut r).unwrap_or(a.samples) } else { 0 };
            let hyp = hypersimplex_adjacency_failures(s, a.samples, &mut r).unwrap_or(a.samples);
            (structural, signs, hyp)
        })
        .collect();
    let structural: usize = rows.iter().map(|r| r.0).sum();
    let signs: usize = rows.iter().map(|r| r.1).sum();
    let hyp: usize = rows.iter().map(|r| r.2).sum();
    let per_tile = 1 + a.samples * if a.k >= 1 { 2 } else { 1 };
    Ok(Tally::new(tiles.len() * per_tile, structural + signs + hyp).with(json!({
        "tiles": tiles.len(),
        "structural_failures": structural,
        "amplituhedron_sign_failures": signs,
        "hypersimplex_failures": hyp,
    })))
}

fn exchange(a: &VerifyArgs, z: &ZMatrix) -> Result<Tally> {
    needs_positive_k(a.k)?;
    let tiles = seeded_tiles(a.k, a.n, a.seed)?;
    let (checks, failures) = sum(tiles.par_iter().map(|(seed, s)| {
        let mut r = rng(*seed);
        let (mut checks, mut bad) = (0, 0);
        for t in s.triangulations() {
            let arcs = t.flippable_arcs();
            if arcs.is_empty() {
                continue;
            }
            for _ in 0..a.samples {
                let y = YPoint::from_c(&random_tp_matrix(&mut r, a.k, a.n), z).expect("full rank");
                for &arc in &arcs {
                    checks += 1;
                    if verify_exchange(&y, z, &t, arc) != Ok(true) {
                        bad += 1;
                    }
                }
            }
        }
        (checks, bad)
    }));
    Ok(Tally::new(checks, failures).with(json!({ "tiles": tiles.len() })))
}

fn positive_part(a: &VerifyArgs, z: &ZMatrix) -> Result<Tally> {
    needs_positive_k(a.k)?;
    let tiles = seeded_tiles(a.k, a.n, a.seed)?;
    let (checks, failures) = sum(tiles.par_iter().map(|(seed, s)| {
        let mut r = rng(*seed);
        let t = s.canonical_triangulation();
        let mut bad = 0;
        for i in 0..a.samples {
            let c = if i % 2 == 0 {
                sample_cell_point(&t, &random_weights(&mut r, 3 * a.k)).expect("positive weights")
            } else {
                random_tp_matrix(&mut r, a.k, a.n)
            };
            let y = YPoint::from_c(&c, z).expect("full rank");
            match positive_part_check(&y, z, s) {
                Ok(p) if p.consistent() && (i % 2 == 1 || p.all_positive) => {}
                Ok(_) => bad += 1,
                Err(_) => {}
            }
        }
        (a.samples, bad)
    }));
    Ok(Tally::new(checks, failures).with(json!({ "tiles": tiles.len() })))
}

fn tduality_trip(a: &VerifyArgs) -> Result<Tally> {
    let tiles = enumerate_subdivisions(a.k, a.n)?;
    let failures = tiles
        .par_iter()
        .filter(|s| {
            let g = s.trivalent_dual_tree();
            let pi = g.trip_permutation().expect("trip");
            let hat = pi.t_dual().expect("loopless");
            g.t_dual_graph().and_then(|h| h.trip_permutation()).ok() != Some(hat.clone())
                || s.ghat().trip_permutation().ok() != Some(hat)
        })
        .count();
    Ok(Tally::new(tiles.len(), failures).with(json!({ "tiles": tiles.len() })))
}

fn realize(a: &VerifyArgs) -> Result<Tally> {
    let ws = enumerate_d(a.k, a.n)?;
    let certs: Vec<Value> = ws
        .par_iter()
        .map(|w| match realize_chamber(w) {
            Ok(c) => {
                let ok = chamber_of(&TwistorTable::new(&c.y, &c.zt)).as_ref() == Ok(w);
                json!({ "w": w.to_string(), "verified": ok, "certificate": c })
            }
            Err(e) => json!({ "w": w.to_string(), "verified": false, "error": e.to_string() }),
        })
        .collect();
    let failures = certs.iter().filter(|c| c["verified"] != Value::Bool(true)).count();
    Ok(Tally::new(ws.len(), failures).with(json!({ "certificates": certs })))
}

fn descent(a: &VerifyArgs, z: &ZMatrix) -> Result<Tally> {
    let tiles = descent_tiling(a.k, a.n)?;
    let hyp = verify_tiling(&tiles, VerifyMode::Hypersimplex, None, 0, a.seed)?;
    let amp = verify_tiling(&tiles, VerifyMode::Amplituhedron, Some(z), a.samples, a.seed)?;
    let pairs = tduality_transfer(&tiles)?;
    let trips_ok = pairs.iter().all(|p| p.hypersimplex.t_dual().ok().as_ref() == Some(&p.amplituhedron));
    let failures = usize::from(hyp.verdict != Verdict::Valid)
        + usize::from(amp.verdict == Verdict::Invalid)
        + usize::from(!trips_ok);
    Ok(Tally::new(3, failures).with(json!({
        "tiles": pairs.iter().map(|p| json!({
            "black": p.tile.black(),
            "hypersimplex_trip": p.hypersimplex.to_string(),
            "amplituhedron_trip": p.amplituhedron.to_string(),
        })).collect::<Vec<_>>(),
        "hypersimplex": hyp,
        "amplituhedron": amp,
    })))
}

fn containment(a: &VerifyArgs) -> Result<Tally> {
    let tiles = enumerate_subdivisions(a.k, a.n)?;
    let ws = enumerate_d(a.k, a.n)?;
    let (checks, failures) = sum(tiles.par_iter().map(|s| {
        let poly = tree_polytope(s).expect("tree polytope");
        let bad = ws
            .iter()
            .filter(|w| {
                let x = w_simplex(w).expect("w-simplex");
                let basis = simplex_in_polytope(&x, &poly);
                basis != simplex_in_tree_by_area(&x, s) || basis != simplex_in_tree_by_parity(&x, s)
            })
            .count();
        (ws.len(), bad)
    }));
    Ok(Tally::new(checks, failures))
}

fn k1_emptiness(a: &VerifyArgs, z: &ZMatrix) -> Result<Tally> {
    if a.k != 1 {
        return Err(arg_error("k1-emptiness needs k = 1"));
    }
    let ws = enumerate_d(1, a.n)?;
    let mut empty = Vec::new();
    for w in &ws {
        if !chamber_nonempty_k1(w, z)? {
            empty.push(w.to_string());
        }
    }
    let nonempty = ws.len() - empty.len();
    let binom = |n: usize, k: usize| (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1));
    let expected = (a.z == "vandermonde").then(|| binom(a.n, 4) + binom(a.n - 1, 2));
    let failures = usize::from(expected.is_some_and(|e| e != nonempty));
    Ok(Tally::new(1, failures).with(json!({
        "chambers": ws.len(),
        "nonempty": nonempty,
        "expected_nonempty": expected,
        "empty": empty,
    })))
}

pub fn cmd_verify(a: &VerifyArgs) -> Result<bool> {
    check_shape(a.k, a.n)?;
    let z = load_z(&a.z, a.k, a.n)?;
    let tally = thread_pool().install(|| match a.claim {
        Claim::Sign1 => sign1(a, &z),
        Claim::Nicerep => nicerep(a, &z),
        Claim::Main1 => main1(a, &z),
        Claim::Wcover => wcover(a),
        Claim::Adjacency => adjacency(a, &z),
        Claim::Exchange => exchange(a, &z),
        Claim::PositivePart => positive_part(a, &z),
        Claim::TdualityTrip => tduality_trip(a),
        Claim::Realize => realize(a),
        Claim::DescentTiling => descent(a, &z),
        Claim::Containment => containment(a),
        Claim::K1Emptiness => k1_emptiness(a, &z),
    })?;
    let name = clap::ValueEnum::to_possible_value(&a.claim).map(|v| v.get_name().to_string()).unwrap_or_default();
    let report = Report {
        claim: name,
        version: crate::VERSION,
        seed: a.seed,
        k: a.k,
        n: a.n,
        z: a.z.clone(),
        samples: a.samples,
        checks: tally.checks,
        failures: tally.failures,
        pass: tally.failures == 0,
        details: tally.details,
    };
    let mut w = open_out(a.out.as_deref())?;
    writeln!(w, "{}", serde_json::to_string(&report)?)?;
    w.flush()?;
    Ok(report.pass)
}
