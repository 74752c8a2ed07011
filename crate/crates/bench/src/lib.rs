//! Shared fixtures for the benchmarks.

use positroid_lab::amplituhedron::random_tp_matrix;
use positroid_lab::{BicoloredSubdivision, TwistorTable, YPoint, ZMatrix};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Seeded twistor tables of points of `Gr_{k,n}^{>0}` under the Vandermonde `Z`.
pub fn positive_tables(k: usize, n: usize, count: usize, seed: u64) -> Vec<TwistorTable> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let z = ZMatrix::vandermonde(n, k).expect("n >= k + 2");
    (0..count)
        .map(|_| {
            let y = YPoint::from_c(&random_tp_matrix(&mut rng, k, n), &z).expect("full rank");
            TwistorTable::new(&y, &z)
        })
        .collect()
}

/// Two black polygons `{1,7,8,9}` and `{2,3,4,6,7}` in a 9-gon.
pub fn two_polygon_tile() -> BicoloredSubdivision {
    BicoloredSubdivision::new(9, vec![vec![1, 7, 8, 9], vec![2, 3, 4, 6, 7]]).expect("valid subdivision")
}
