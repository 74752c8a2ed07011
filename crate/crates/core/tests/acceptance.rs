//! Acceptance suite. Prints one line per criterion and exits non-zero when a
//! criterion fails that is not listed in `KNOWN_DEVIATIONS`.
//!
//! Pass `--long` (or set `POSITROID_LAB_LONG=1`) to include the `(2,8)` tiling count.

use std::process::ExitCode;
use std::time::Instant;

use positroid_lab::amplituhedron::{
    b_embed, chamber_nonempty_k1, chamber_of, compatible_signs_hold, extend_to_tnn, membership_signflip,
    point_in_tile, random_tp_matrix, random_weights, realize_chamber, sample_cell_point, tnn_representative,
    twistor_matrix,
};
use positroid_lab::cluster::{check_adjacency, verify_exchange};
use positroid_lab::exact::{gaussian_tp_kernel, rat, ratio, vandermonde_positive};
use positroid_lab::hypersimplex::{
    simplex_in_polytope, simplex_in_tree_by_area, simplex_in_tree_by_parity, tree_polytope, w_simplex,
};
use positroid_lab::permutations::{enumerate_d, eulerian};
use positroid_lab::plabic::enumerate_subdivisions;
use positroid_lab::subset;
use positroid_lab::tilings::{
    compatibility_graph, count_tilings, descent_tiling, enumerate_tilings, verify_tiling, ChamberSet, Verdict,
    VerifyMode,
};
use positroid_lab::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Criteria whose failure is understood and recorded; they still print FAIL.
const KNOWN_DEVIATIONS: &[&str] = &["3a", "9b"];

const SEED: u64 = 20_240_611;

struct Outcome {
    id: &'static str,
    pass: Option<bool>,
    detail: String,
    secs: f64,
}

fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn run(id: &'static str, f: impl FnOnce() -> (Option<bool>, String)) -> Outcome {
    let start = Instant::now();
    let (pass, detail) = f();
    let out = Outcome { id, pass, detail, secs: start.elapsed().as_secs_f64() };
    let tag = match out.pass {
        Some(true) => "PASS",
        Some(false) if KNOWN_DEVIATIONS.contains(&id) => "FAIL (known deviation)",
        Some(false) => "FAIL",
        None => "SKIP",
    };
    println!("[{:>3}] {tag:<22} {:>8.2}s  {}", out.id, out.secs, out.detail);
    out
}

fn small_shapes(max_k: usize, max_n: usize) -> Vec<(usize, usize)> {
    (2..=max_n).flat_map(|n| (0..=max_k.min(n - 2)).map(move |k| (k, n))).collect()
}

fn schroeder() -> (Option<bool>, String) {
    let expect: [&[usize]; 6] =
        [&[1], &[1, 1], &[1, 4, 1], &[1, 10, 10, 1], &[1, 20, 48, 20, 1], &[1, 35, 161, 161, 35, 1]];
    let totals = [1, 2, 6, 22, 90, 394];
    let mut ok = true;
    let mut got_totals = Vec::new();
    for (i, row) in expect.iter().enumerate() {
        let n = i + 2;
        let got: Vec<usize> = (0..=n - 2).map(|k| enumerate_subdivisions(k, n).unwrap().len()).collect();
        ok &= got == *row && got.iter().sum::<usize>() == totals[i];
        got_totals.push(got.iter().sum::<usize>());
    }
    (Some(ok), format!("bicolored subdivision rows n=2..7, totals {got_totals:?}"))
}

fn eulerian_counts() -> (Option<bool>, String) {
    let mut ok = true;
    for n in 2..=9 {
        let mut sum = 0u64;
        for k in 0..=n - 2 {
            let c = enumerate_d(k, n).unwrap().len() as u64;
            ok &= c == eulerian(n - 1, k);
            sum += c;
        }
        ok &= sum == (1..n as u64).product::<u64>();
    }
    let e15 = enumerate_d(1, 6).unwrap().len();
    let e16 = enumerate_d(1, 7).unwrap().len();
    ok &= e15 == 26 && e16 == 57;
    (Some(ok), format!("|D_(k+1,n)| = E(n-1,k) for n <= 9; E(5,1) = {e15}, E(6,1) = {e16}; row sums (n-1)!"))
}

fn tilings_27() -> (Option<bool>, String) {
    let g = compatibility_graph(2, 7).unwrap();
    let all = enumerate_tilings(&g, &ChamberSet::full(g.index.len()));
    let valid = all
        .iter()
        .take(200)
        .all(|t| {
            let tiles: Vec<_> = t.tiles.iter().map(|&i| g.tiles[i].clone()).collect();
            verify_tiling(&tiles, VerifyMode::Hypersimplex, None, 0, 0).unwrap().verdict == Verdict::Valid
        });
    let pass = all.len() == 3073;
    (
        Some(pass),
        format!(
            "(2,7): {} tilings, expected 3073; first 200 independently verified: {valid}; see decisions ledger",
            all.len()
        ),
    )
}

fn tilings_28(long: bool) -> (Option<bool>, String) {
    if !long {
        return (None, "(2,8) count-only needs --long".into());
    }
    let g = compatibility_graph(2, 8).unwrap();
    let c = count_tilings(&g, &ChamberSet::full(g.index.len()));
    (Some(c == 6_443_460), format!("(2,8) count-only: {c}, expected 6443460"))
}

fn descent_family() -> (Option<bool>, String) {
    let mut ok = true;
    let mut checked = 0;
    for (k, n) in small_shapes(3, 8).into_iter().filter(|&(_, n)| n >= 3) {
        let tiles = descent_tiling(k, n).unwrap();
        ok &= tiles.len() as u64 == binom(n - 2, k);
        let r = verify_tiling(&tiles, VerifyMode::Hypersimplex, None, 0, 0).unwrap();
        ok &= r.verdict == Verdict::Valid;
        for s in subset::k_subsets(n - 2, k) {
            let (_, kg, cg) = BicoloredSubdivision::kermit_graphs(&subset::labels(s << 1), n).unwrap();
            ok &= kg.trip_permutation().unwrap() == cg.trip_permutation().unwrap().t_dual().unwrap();
        }
        checked += 1;
    }
    (Some(ok), format!("{checked} shapes (k <= 3, n <= 8): binom(n-2,k) tiles, chamber partition, trip(K_I) = hat(trip(C_I))"))
}

fn t_duality_graphs() -> (Option<bool>, String) {
    let trees: Vec<BicoloredSubdivision> = small_shapes(6, 8)
        .into_iter()
        .filter(|&(_, n)| n >= 3)
        .flat_map(|(k, n)| enumerate_subdivisions(k, n).unwrap())
        .collect();
    let bad = trees
        .par_iter()
        .filter(|s| {
            let g = s.trivalent_dual_tree();
            let pi = g.trip_permutation().unwrap();
            g.t_dual_graph().unwrap().trip_permutation().unwrap() != pi.t_dual().unwrap()
        })
        .count();
    let pi = DecoratedPermutation::with_loops(vec![2, 4, 7, 1, 8, 5, 3, 6]).unwrap();
    let h = PlabicGraph::from_permutation(&pi).unwrap().black_trivalent().t_dual_graph().unwrap();
    let example = h.trip_permutation().unwrap().images() == [6, 2, 4, 7, 1, 8, 5, 3];
    (Some(bad == 0 && example), format!("{} dual trees n <= 8, {bad} failures; 24718536 -> 62471853: {example}", trees.len()))
}

/// Criteria 6 and 7 share one sample set.
fn tile_samples() -> ((Option<bool>, String), (Option<bool>, String)) {
    let tiles: Vec<(usize, BicoloredSubdivision)> = small_shapes(3, 7)
        .into_iter()
        .filter(|&(k, _)| k >= 1)
        .flat_map(|(k, n)| enumerate_subdivisions(k, n).unwrap())
        .enumerate()
        .collect();
    let per_tile = 100;
    let (sign_fail, rep_fail) = tiles
        .par_iter()
        .map(|(idx, s)| {
            let mut r = rng(*idx as u64 + 1);
            let z = ZMatrix::random(&mut r, s.n(), s.k());
            let ts = s.triangulations();
            let (mut sf, mut rf) = (0usize, 0usize);
            for _ in 0..per_tile {
                let t = &ts[r.gen_range(0..ts.len())];
                let c = sample_cell_point(t, &random_weights(&mut r, 3 * s.k())).unwrap();
                let y = YPoint::from_c(&c, &z).unwrap();
                let table = TwistorTable::new(&y, &z);
                if !compatible_signs_hold(&table, s) || !point_in_tile(&table, s) {
                    sf += 1;
                }
                let ctw = tnn_representative(&twistor_matrix(&table, t));
                let ok = YPoint::from_c(&ctw, &z)
                    .ok()
                    .and_then(|back| table.ratio_to(&TwistorTable::new(&back, &z)))
                    .is_some_and(|l| l > rat(0));
                if !ok {
                    rf += 1;
                }
            }
            (sf, rf)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    let total = tiles.len() * per_tile;
    (
        (Some(sign_fail == 0), format!("{} tiles (1 <= k <= 3, n <= 7), {total} samples, {sign_fail} sign failures", tiles.len())),
        (Some(rep_fail == 0), format!("{total} samples, {rep_fail} non-proportional twistor tables")),
    )
}

fn sign_flip() -> (Option<bool>, String) {
    let samples = 1000;
    let mut report = Vec::new();
    let mut ok = true;
    for (salt, (k, n)) in [(1usize, 6usize), (2, 6), (2, 7), (3, 7)].into_iter().enumerate() {
        let z = ZMatrix::vandermonde(n, k).unwrap();
        let kermits = descent_tiling(k, n).unwrap();
        let (fwd, rev) = (0..samples)
            .into_par_iter()
            .map(|i| {
                let mut r = rng(1000 * (salt as u64 + 1) + i as u64);
                let y = YPoint::from_c(&random_tp_matrix(&mut r, k, n), &z).unwrap();
                let table = TwistorTable::new(&y, &z);
                let forward = (1..=n).all(|a| membership_signflip(&table, a));
                let generic = (1..=n).all(|i| (i + 1..=n).all(|j| *table.get(i, j) != rat(0)));
                let reverse = !generic
                    || (chamber_of(&table).is_ok() && kermits.iter().any(|s| point_in_tile(&table, s)));
                (usize::from(!forward), usize::from(!reverse))
            })
            .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
        ok &= fwd == 0 && rev == 0;
        report.push(format!("({k},{n}) {fwd}/{rev}"));
    }
    (Some(ok), format!("{samples} samples per shape, all anchors; forward/reverse failures: {}", report.join(", ")))
}

fn realizability() -> (Option<bool>, String) {
    let ws: Vec<WPermutation> = (3..=7).flat_map(|n| (0..=n - 2).flat_map(move |k| enumerate_d(k, n).unwrap())).collect();
    let bad: Vec<String> = ws
        .par_iter()
        .filter(|w| {
            realize_chamber(w).map_or(true, |cert| chamber_of(&TwistorTable::new(&cert.y, &cert.zt)).as_ref() != Ok(*w))
        })
        .map(ToString::to_string)
        .collect();
    (Some(bad.is_empty()), format!("{} chambers n <= 7 realized with exact certificates; failures {bad:?}", ws.len()))
}

fn realizability_example() -> (Option<bool>, String) {
    let w = WPermutation::parse("2614537").unwrap();
    let cert = realize_chamber(&w).unwrap();
    let z_printed = ExactMatrix::from_i64(&[vec![1, 1, -1, -1, 1, 1, -1], vec![1, 4, -2, -7, 5, 6, -3]]);
    let a_rows = vec![
        vec![1, 4, 0, 0, 0, 0, 0],
        vec![0, 0, -2, -7, 0, 0, 0],
        vec![0, 0, 0, 0, 5, 6, 0],
        vec![0, 0, 0, 0, 0, 0, -3],
    ];
    let mut printed = vec![vec![1, 1, -1, -1, 1, 1, 1]];
    printed.extend(a_rows.iter().cloned());
    let aprime_printed = ExactMatrix::from_i64(&printed);
    let z_ok = cert.z == z_printed;
    let a_ok = (1..5).all(|i| cert.aprime.row(i) == aprime_printed.row(i));
    let diffs: Vec<(usize, usize)> = (0..5)
        .flat_map(|i| (0..7).map(move |j| (i, j)))
        .filter(|&(i, j)| cert.aprime.get(i, j) != aprime_printed.get(i, j))
        .map(|(i, j)| (i, j + 1))
        .collect();
    let ours_tnn = cert.aprime.all_maximal_minors_nonnegative();
    let printed_tnn = aprime_printed.all_maximal_minors_nonnegative();
    let stacked = extend_to_tnn(&z_printed).unwrap() == cert.aprime && cert.aprime.row(0) == z_printed.row(0);
    (
        Some(z_ok && diffs.is_empty()),
        format!(
            "w=2614537: z verbatim {z_ok}, block rows verbatim {a_ok}, A' entries (row from 0, column from 1) differing from print {diffs:?}; \
             ours = z row 1 over blocks {stacked}, ours TNN {ours_tnn}, printed TNN {printed_tnn}"
        ),
    )
}

fn k1_emptiness() -> (Option<bool>, String) {
    let mut ok = true;
    let mut parts = Vec::new();
    for (n, expect) in [(6usize, 25usize), (7, 50)] {
        let z = ZMatrix::vandermonde(n, 1).unwrap();
        let ws = enumerate_d(1, n).unwrap();
        let nonempty = ws.iter().filter(|w| chamber_nonempty_k1(w, &z).unwrap()).count();
        let formula = binom(n, 4) + binom(n - 1, 2);
        ok &= nonempty == expect && nonempty as u64 == formula;
        parts.push(format!("n={n}: {nonempty}/{}", ws.len()));
    }
    // hexagon discriminant decides which of the two competing chambers is realized
    let mut r = rng(77);
    let mut agree = 0;
    let trials = 50;
    let plus = WPermutation::parse("145236").unwrap();
    let minus = WPermutation::parse("341256").unwrap();
    for _ in 0..trials {
        let z = ZMatrix::random(&mut r, 6, 1);
        let d = |rows: [usize; 3]| ExactMatrix::from_rows(rows.iter().map(|&i| z.row(i).to_vec()).collect()).unwrap().det();
        let f = d([1, 2, 5]) * d([4, 3, 6]) - d([1, 3, 6]) * d([4, 2, 5]);
        let (p, m) = (chamber_nonempty_k1(&plus, &z).unwrap(), chamber_nonempty_k1(&minus, &z).unwrap());
        let pos = f > rat(0);
        if f == rat(0) || (p == pos && m != pos) {
            agree += 1;
        }
    }
    ok &= agree == trials;
    (Some(ok), format!("{}; discriminant sign decides 145236 vs 341256 on {agree}/{trials} random Z", parts.join(", ")))
}

fn containment() -> (Option<bool>, String) {
    let shapes: Vec<(usize, usize)> = small_shapes(5, 7).into_iter().filter(|&(_, n)| n >= 3).collect();
    let (pairs, bad) = shapes
        .par_iter()
        .map(|&(k, n)| {
            let tiles = enumerate_subdivisions(k, n).unwrap();
            let polys: Vec<_> = tiles.iter().map(|s| tree_polytope(s).unwrap()).collect();
            let mut pairs = 0usize;
            let mut bad = 0usize;
            for w in enumerate_d(k, n).unwrap() {
                let ws = w_simplex(&w).unwrap();
                for (s, p) in tiles.iter().zip(&polys) {
                    let basis = simplex_in_polytope(&ws, p);
                    if basis != simplex_in_tree_by_area(&ws, s) || basis != simplex_in_tree_by_parity(&ws, s) {
                        bad += 1;
                    }
                    pairs += 1;
                }
            }
            (pairs, bad)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    let w = WPermutation::parse("1645237").unwrap();
    let polytope = |images: Vec<usize>| {
        let g = PlabicGraph::from_permutation(&DecoratedPermutation::with_loops(images).unwrap()).unwrap();
        PositroidPolytope::from_bases(7, g.positroid_bases().unwrap()).unwrap()
    };
    let p1 = polytope(vec![2, 3, 7, 1, 6, 4, 5]);
    let p2 = polytope(vec![6, 7, 4, 5, 2, 3, 1]);
    let inside: Vec<WPermutation> = enumerate_d(w.k(), 7)
        .unwrap()
        .into_iter()
        .filter(|v| {
            let x = w_simplex(v).unwrap();
            simplex_in_polytope(&x, &p1) && simplex_in_polytope(&x, &p2)
        })
        .collect();
    let example = inside == vec![w];
    (Some(bad == 0 && example), format!("{pairs} (w, tile) pairs n <= 7, {bad} disagreements; 1645237 = intersection of two positroid polytopes: {example}"))
}

fn cluster() -> (Option<bool>, String) {
    let adj_tiles: Vec<BicoloredSubdivision> = small_shapes(3, 8)
        .into_iter()
        .filter(|&(_, n)| n >= 3)
        .flat_map(|(k, n)| enumerate_subdivisions(k, n).unwrap())
        .collect();
    let adj_bad = adj_tiles.par_iter().filter(|s| !check_adjacency(s).holds()).count();
    let ex_tiles: Vec<(usize, BicoloredSubdivision)> = small_shapes(3, 7)
        .into_iter()
        .filter(|&(k, n)| k >= 1 && n >= 4)
        .flat_map(|(k, n)| enumerate_subdivisions(k, n).unwrap())
        .enumerate()
        .collect();
    let (checks, ex_bad) = ex_tiles
        .par_iter()
        .map(|(idx, s)| {
            let mut r = rng(50_000 + *idx as u64);
            let z = ZMatrix::random(&mut r, s.n(), s.k());
            let mut checks = 0usize;
            let mut bad = 0usize;
            for t in s.triangulations() {
                let arcs = t.flippable_arcs();
                if arcs.is_empty() {
                    continue;
                }
                for _ in 0..10 {
                    let y = YPoint::from_c(&random_tp_matrix(&mut r, s.k(), s.n()), &z).unwrap();
                    for &arc in &arcs {
                        checks += 1;
                        if verify_exchange(&y, &z, &t, arc) != Ok(true) {
                            bad += 1;
                        }
                    }
                }
            }
            (checks, bad)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    (
        Some(adj_bad == 0 && ex_bad == 0),
        format!(
            "adjacency on {} subdivisions (k <= 3, n <= 8): {adj_bad} failures; {checks} exact exchange checks: {ex_bad} failures",
            adj_tiles.len()
        ),
    )
}

fn properties() -> (Option<bool>, String) {
    let mut r = rng(9);
    let mut plucker_ok = true;
    for _ in 0..200 {
        let rows: Vec<Vec<i64>> = (0..3).map(|_| (0..6).map(|_| r.gen_range(-9..=9)).collect()).collect();
        let m = ExactMatrix::from_i64(&rows);
        let base = m.plucker(&[1, 3, 5]).unwrap();
        plucker_ok &= m.plucker(&[3, 1, 5]).unwrap() == -base.clone() && m.plucker(&[5, 3, 1]).unwrap() == -base;
    }
    let mut tp_ok = true;
    for n in 1..=6 {
        for p in 1..=n {
            tp_ok &= vandermonde_positive(n, p).unwrap().transpose().all_maximal_minors_positive();
        }
        for q in [ratio(1, 2), ratio(1, 3), ratio(9, 10)] {
            tp_ok &= gaussian_tp_kernel(n, &q).unwrap().is_totally_positive();
        }
    }
    let perms: Vec<DecoratedPermutation> =
        (4..=7).flat_map(DecoratedPermutation::all).filter(|p| p.k() >= 1 && p.k() < p.n()).collect();
    let moves_ok = (0..200usize)
        .into_par_iter()
        .all(|i| {
            let mut r = rng(300_000 + i as u64);
            let pi = &perms[r.gen_range(0..perms.len())];
            let mut g = PlabicGraph::from_permutation(pi).unwrap();
            let trip = g.trip_permutation().unwrap();
            let bases = g.positroid_bases().unwrap();
            for _ in 0..8 {
                let moves = g.applicable_moves();
                if moves.is_empty() {
                    break;
                }
                g = g.apply_move(&moves[r.gen_range(0..moves.len())]).unwrap();
                if g.trip_permutation().unwrap() != trip {
                    return false;
                }
            }
            g.positroid_bases().unwrap() == bases
        });
    let shapes = [(1usize, 5usize), (1, 6), (2, 6), (2, 7), (3, 7)];
    let embed_ok = (0..200usize).into_par_iter().all(|i| {
        let mut r = rng(400_000 + i as u64);
        let (k, n) = shapes[i % shapes.len()];
        let z = ZMatrix::random(&mut r, n, k);
        let y = YPoint::from_c(&random_tp_matrix(&mut r, k, n), &z).unwrap();
        TwistorTable::new(&y, &z).ratio_to(&TwistorTable::from_plucker(&b_embed(&y, &z), k)).is_some()
    });
    (
        Some(plucker_ok && tp_ok && moves_ok && embed_ok),
        format!("plucker {plucker_ok}, TP certificates n <= 6 {tp_ok}, 200 move sequences {moves_ok}, 200 b_embed samples {embed_ok}"),
    )
}

fn binom(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    (0..k as u64).fold(1, |acc, i| acc * (n as u64 - i) / (i + 1))
}

fn main() -> ExitCode {
    let long = std::env::args().any(|a| a == "--long") || std::env::var("POSITROID_LAB_LONG").is_ok_and(|v| v == "1");
    println!("acceptance suite (seed {SEED}, exact arithmetic, tolerance 0)");
    let mut outcomes = vec![
        run("1", schroeder),
        run("2", eulerian_counts),
        run("3a", tilings_27),
        run("3b", || tilings_28(long)),
        run("4", descent_family),
        run("5", t_duality_graphs),
    ];
    let start = Instant::now();
    let (c6, c7) = tile_samples();
    let shared = start.elapsed().as_secs_f64();
    outcomes.push(run("6", || c6));
    outcomes.push(run("7", || (c7.0, format!("{} (sampled with 6 in {shared:.2}s)", c7.1))));
    outcomes.push(run("8", sign_flip));
    outcomes.push(run("9a", realizability));
    outcomes.push(run("9b", realizability_example));
    outcomes.push(run("10", k1_emptiness));
    outcomes.push(run("11", containment));
    outcomes.push(run("12", cluster));
    outcomes.push(run("13", properties));

    let failed: Vec<&str> = outcomes.iter().filter(|o| o.pass == Some(false)).map(|o| o.id).collect();
    let unexpected: Vec<&str> = failed.iter().copied().filter(|id| !KNOWN_DEVIATIONS.contains(id)).collect();
    let passed = outcomes.iter().filter(|o| o.pass == Some(true)).count();
    let skipped = outcomes.iter().filter(|o| o.pass.is_none()).count();
    println!(
        "summary: {passed} passed, {} failed ({} known deviations), {skipped} skipped",
        failed.len(),
        failed.len() - unexpected.len()
    );
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {unexpected:?}");
        ExitCode::FAILURE
    }
}
