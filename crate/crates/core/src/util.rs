//! Small shared helpers: a deterministic RNG for tests and demos, unimodular
//! powers, and a scoped-thread parallel map used by grid sweeps.

use num_complex::Complex64;
use std::f64::consts::TAU;

/// SplitMix64. Deterministic across platforms; used wherever reproducible
/// pseudo-random data is needed (tests, acceptance suite, demo configs).
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform f64 in [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform f64 in [lo, hi).
    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Uniform point of the open disk of radius `max_modulus`.
    pub fn disk(&mut self, max_modulus: f64) -> Complex64 {
        let r = max_modulus * self.next_f64().sqrt();
        let t = self.range(0.0, TAU);
        Complex64::from_polar(r, t)
    }

    /// Uniform point of the unit circle.
    pub fn unimodular(&mut self) -> Complex64 {
        Complex64::from_polar(1.0, self.range(0.0, TAU))
    }
}

/// k-th power of a unimodular number, evaluated through the argument so that
/// large |k| does not accumulate per-multiplication rounding.
pub fn unit_pow(g: Complex64, k: i64) -> Complex64 {
    if k == 0 {
        return Complex64::new(1.0, 0.0);
    }
    Complex64::from_polar(1.0, (k as f64 * g.arg()).rem_euclid(TAU))
}

/// Number of worker threads for grid sweeps. `CMV_THREADS` caps it.
pub fn effective_threads() -> usize {
    let avail = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1);
    match std::env::var("CMV_THREADS") {
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n >= 1 => n.min(avail.max(1)),
            _ => avail,
        },
        Err(_) => avail,
    }
}

/// Applies `f` to 0..n across scoped threads, preserving index order.
/// Falls back to a plain loop when one thread suffices.
pub fn parallel_map<T, F>(n: usize, threads: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let threads = threads.max(1).min(n.max(1));
    if threads == 1 || n < 2 {
        return (0..n).map(f).collect();
    }
    let mut out: Vec<Option<T>> = (0..n).map(|_| None).collect();
    let chunk = n.div_ceil(threads);
    std::thread::scope(|scope| {
        for (t, slot) in out.chunks_mut(chunk).enumerate() {
            let f = &f;
            scope.spawn(move || {
                for (i, s) in slot.iter_mut().enumerate() {
                    *s = Some(f(t * chunk + i));
                }
            });
        }
    });
    out.into_iter().map(|x| x.unwrap()).collect()
}

/// Median of a slice (NaNs sort last). Empty input yields NaN.
pub fn median(values: &[f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Less));
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}
