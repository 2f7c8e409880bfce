//! Discrete Fréchet distance between planar polylines.

use super::Polyline2;

fn dist(a: (f64, f64), b: (f64, f64)) -> f64 {
    let dx = a.0 - b.0;
    let dy = a.1 - b.1;
    (dx * dx + dy * dy).sqrt()
}

/// Discrete Fréchet distance under Euclidean point distance, computed
/// by the standard dynamic program over the |p| x |q| coupling table.
pub fn frechet_distance(p: &Polyline2, q: &Polyline2) -> f64 {
    let a = p.points();
    let b = q.points();
    // One row of the coupling table at a time.
    let mut prev = vec![0.0f64; b.len()];
    let mut row = vec![0.0f64; b.len()];
    for (i, &pa) in a.iter().enumerate() {
        for (j, &qb) in b.iter().enumerate() {
            let d = dist(pa, qb);
            row[j] = match (i, j) {
                (0, 0) => d,
                (0, _) => row[j - 1].max(d),
                (_, 0) => prev[0].max(d),
                _ => prev[j].min(prev[j - 1]).min(row[j - 1]).max(d),
            };
        }
        std::mem::swap(&mut prev, &mut row);
    }
    prev[b.len() - 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsp::Polyline2;

    /// Oracle: the plain recursive definition, no memoization. Only
    /// usable for short polylines; enumerates every monotone coupling.
    pub(crate) fn frechet_naive(p: &[(f64, f64)], q: &[(f64, f64)]) -> f64 {
        fn rec(p: &[(f64, f64)], q: &[(f64, f64)], i: usize, j: usize) -> f64 {
            let d = dist(p[i], q[j]);
            match (i, j) {
                (0, 0) => d,
                (0, _) => rec(p, q, 0, j - 1).max(d),
                (_, 0) => rec(p, q, i - 1, 0).max(d),
                _ => rec(p, q, i - 1, j)
                    .min(rec(p, q, i, j - 1))
                    .min(rec(p, q, i - 1, j - 1))
                    .max(d),
            }
        }
        rec(p, q, p.len() - 1, q.len() - 1)
    }

    fn poly(points: &[(f64, f64)]) -> Polyline2 {
        Polyline2::new(points.to_vec()).unwrap()
    }

    #[test]
    fn identical_polylines_have_zero_distance() {
        let p = poly(&[(0.0, 1.0), (2.0, 3.0), (4.0, -1.0)]);
        assert_eq!(frechet_distance(&p, &p), 0.0);
    }

    #[test]
    fn constant_vertical_offset() {
        let p = poly(&[(0.0, 0.0), (1.0, 0.0)]);
        let q = poly(&[(0.0, 1.0), (1.0, 1.0)]);
        assert_eq!(frechet_distance(&p, &q), 1.0);
    }

    #[test]
    fn triangle_bump_against_baseline() {
        let p = poly(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)]);
        let q = poly(&[(0.0, 0.0), (1.0, 1.0), (2.0, 0.0)]);
        let d = frechet_distance(&p, &q);
        assert_eq!(d, frechet_naive(p.points(), q.points()));
        assert!((d - 1.0).abs() < 1e-12);
    }

    #[test]
    fn symmetric_in_arguments() {
        let p = poly(&[(0.0, 0.0), (1.0, 2.0), (2.0, -1.0), (3.0, 0.5)]);
        let q = poly(&[(0.0, 1.0), (1.5, 0.0), (3.0, 2.0)]);
        assert_eq!(frechet_distance(&p, &q), frechet_distance(&q, &p));
    }

    #[test]
    fn matches_naive_recursion_on_random_short_polylines() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(42);
        for _ in 0..200 {
            let np = rng.gen_range(1..=6);
            let nq = rng.gen_range(1..=6);
            let mk = |rng: &mut rand_chacha::ChaCha12Rng, n: usize| {
                (0..n)
                    .map(|_| (rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)))
                    .collect::<Vec<_>>()
            };
            let a = mk(&mut rng, np);
            let b = mk(&mut rng, nq);
            let dp = frechet_distance(&poly(&a), &poly(&b));
            assert_eq!(dp, frechet_naive(&a, &b));
        }
    }

    #[test]
    fn uniform_scaling_scales_distance() {
        let a = [(0.0, 0.0), (1.0, 2.0), (2.0, 0.5)];
        let b = [(0.0, 1.0), (1.0, -1.0), (2.0, 2.0)];
        let s = 3.5;
        let scale =
            |pts: &[(f64, f64)]| pts.iter().map(|&(x, y)| (s * x, s * y)).collect::<Vec<_>>();
        let d1 = frechet_distance(&poly(&a), &poly(&b));
        let d2 = frechet_distance(&poly(&scale(&a)), &poly(&scale(&b)));
        assert!((d2 - s * d1).abs() < 1e-12);
    }

    #[test]
    fn single_point_polylines() {
        let p = poly(&[(0.0, 0.0)]);
        let q = poly(&[(3.0, 4.0)]);
        assert_eq!(frechet_distance(&p, &q), 5.0);
    }
}
