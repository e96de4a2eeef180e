//! Reproducible sampling of normal-form words.

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::presentation::{Presentation, Word};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleSpec {
    pub max_degree: usize,
    pub samples: usize,
    pub seed: u64,
}

impl SampleSpec {
    pub fn new(max_degree: usize, samples: usize, seed: u64) -> Self {
        SampleSpec { max_degree, samples, seed }
    }

    pub fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

/// Nonunit normal words of degree `1..=max_degree`; all of them when there
/// are at most `samples`, otherwise a uniform sample without replacement,
/// returned in enumeration order.
pub fn sample_words(p: &Presentation, spec: &SampleSpec, stream: u64) -> Vec<Word> {
    let all: Vec<Word> = p.normal_words(spec.max_degree).into_iter().filter(|w| !w.is_unit()).collect();
    sample_subset(&all, spec.samples, spec, stream)
}

/// At most `count` items drawn without replacement, in their original order.
pub fn sample_subset<T: Clone>(xs: &[T], count: usize, spec: &SampleSpec, stream: u64) -> Vec<T> {
    if xs.len() <= count {
        return xs.to_vec();
    }
    let mut rng = spec.rng(stream);
    let mut picked = index::sample(&mut rng, xs.len(), count).into_vec();
    picked.sort_unstable();
    picked.into_iter().map(|i| xs[i].clone()).collect()
}

/// Uniform pairs drawn from two word lists (with replacement).
pub fn sample_pairs<A: Clone, B: Clone>(xs: &[A], ys: &[B], count: usize, spec: &SampleSpec, stream: u64) -> Vec<(A, B)> {
    use rand::Rng;
    if xs.is_empty() || ys.is_empty() {
        return Vec::new();
    }
    if xs.len() * ys.len() <= count {
        return xs.iter().flat_map(|x| ys.iter().map(move |y| (x.clone(), y.clone()))).collect();
    }
    let mut rng = spec.rng(stream);
    (0..count)
        .map(|_| (xs[rng.gen_range(0..xs.len())].clone(), ys[rng.gen_range(0..ys.len())].clone()))
        .collect()
}
