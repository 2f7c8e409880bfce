// Temporary diagnostics; deleted before finalizing.

use puzzle::codec::{encode_curve, generate_patterns};
use puzzle::dsp::{frechet_distance, lowess_smooth, Curve, Polyline2};
use rand::{Rng, SeedableRng};

fn random_smooth_curve(seed: u64, n: usize) -> Curve {
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
    let raw: Vec<f64> = (0..n)
        .map(|i| {
            let x = i as f64 / n as f64;
            (x * rng.gen_range(5.0..20.0)).sin() * rng.gen_range(0.5..3.0)
                + rng.gen_range(-0.5..0.5)
        })
        .collect();
    let c = Curve::new(raw, 1.0).unwrap();
    lowess_smooth(&c, 0.4).unwrap()
}

fn seg_distances(curve: &Curve, m: usize) -> Vec<[f64; 3]> {
    let values = curve.values();
    let n = values.len();
    let k = n / m;
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let peak = max - min;
    let pat = generate_patterns(k, m, peak).unwrap();
    (0..m)
        .map(|s| {
            let chunk = &values[s * k..(s + 1) * k];
            let anchored: Vec<f64> = chunk.iter().map(|v| v - chunk[0]).collect();
            let seg = Polyline2::from_values(&anchored).unwrap();
            [
                frechet_distance(&seg, pat.ascending()),
                frechet_distance(&seg, pat.descending()),
                frechet_distance(&seg, pat.steady()),
            ]
        })
        .collect()
}

#[test]
fn probe_draw_order() {
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(99);
    for seed in 0..100u64 {
        let c: f64 = rng.gen_range(-100.0..100.0);
        let s: f64 = rng.gen_range(0.01..50.0);
        if (s - 35.11957523201195).abs() < 1e-6 {
            println!("MATCH iteration {seed}: c={c} s={s}");
        }
    }
}

#[test]
fn probe_scale_flip() {
    // Reproduce the offset/scale failure path.
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(99);
    for seed in 0..100u64 {
        let curve = random_smooth_curve(seed, 48);
        let m = 4;
        let base = encode_curve(&curve, m).unwrap();
        let c: f64 = rng.gen_range(-100.0..100.0);
        let shifted = Curve::new(curve.values().iter().map(|v| v + c).collect(), 1.0).unwrap();
        let sh = encode_curve(&shifted, m).unwrap();
        let s: f64 = rng.gen_range(0.01..50.0);
        let scaled = Curve::new(curve.values().iter().map(|v| v * s).collect(), 1.0).unwrap();
        let sc = encode_curve(&scaled, m).unwrap();
        if sh != base || sc != base {
            println!("seed {seed} c {c} s {s}");
            println!("base {base} shifted {sh} scaled {sc}");
            for (i, d) in seg_distances(&curve, m).iter().enumerate() {
                println!("  seg {i}: base dists {d:?}");
            }
            for (i, d) in seg_distances(&scaled, m).iter().enumerate() {
                println!("  seg {i}: scaled dists {d:?}  (/s {:?})", d.map(|x| x / s));
            }
        }
    }
}

#[test]
fn probe_mirror() {
    for seed in 0..50u64 {
        let curve = random_smooth_curve(seed + 1000, 48);
        let m = 4;
        let code = encode_curve(&curve, m).unwrap();
        let negated = Curve::new(curve.values().iter().map(|v| -v).collect(), 1.0).unwrap();
        let mirrored = encode_curve(&negated, m).unwrap();
        let expected: Vec<u8> = code
            .symbols()
            .iter()
            .map(|&s| match s {
                0 => 1,
                1 => 0,
                other => other,
            })
            .collect();
        if mirrored.symbols() != expected {
            println!("seed {seed}: code {code} mirrored {mirrored} expected {expected:?}");
            for (i, d) in seg_distances(&curve, m).iter().enumerate() {
                println!("  seg {i} orig dists {d:?}");
            }
            for (i, d) in seg_distances(&negated, m).iter().enumerate() {
                println!("  seg {i} neg  dists {d:?}");
            }
        }
    }
}
