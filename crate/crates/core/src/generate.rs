//! Seeded random hypergraphs with tunable overlap.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::ArgError;
use crate::hypergraph::Hypergraph;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenConfig {
    /// Size of the vertex id space; vertices never drawn do not appear.
    pub n: usize,
    pub m: usize,
    /// Hyperedge sizes are uniform in `1..=max_size`.
    pub max_size: usize,
    /// Probability that a member is drawn from vertices already in use.
    pub overlap_bias: f64,
    pub seed: u64,
}

impl GenConfig {
    pub fn validate(&self) -> Result<(), ArgError> {
        if self.n == 0 || self.m == 0 {
            return Err(ArgError::Config("n and m must be at least 1".into()));
        }
        if self.max_size == 0 {
            return Err(ArgError::Config("max size must be at least 1".into()));
        }
        if self.max_size > self.n {
            return Err(ArgError::Config(format!(
                "max size {} exceeds vertex count {}",
                self.max_size, self.n
            )));
        }
        if !(0.0..=1.0).contains(&self.overlap_bias) {
            return Err(ArgError::Config("overlap bias must lie in [0, 1]".into()));
        }
        if self.n > u32::MAX as usize || self.m > u32::MAX as usize {
            return Err(ArgError::Config("n and m must fit in 32 bits".into()));
        }
        Ok(())
    }
}

/// Draws `m` hyperedges. Every member is, with probability `overlap_bias`,
/// a vertex already used by an earlier hyperedge, and otherwise a uniform
/// vertex of `0..n`. Vertex tokens in the result are the generator's ids.
pub fn generate_random(cfg: &GenConfig) -> Result<Hypergraph, ArgError> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut edges: Vec<Vec<u64>> = Vec::with_capacity(cfg.m);
    let mut used: Vec<u64> = Vec::new();
    let mut is_used = vec![false; cfg.n];
    let mut members: Vec<u64> = Vec::with_capacity(cfg.max_size);
    for _ in 0..cfg.m {
        let size = rng.gen_range(1..=cfg.max_size);
        members.clear();
        while members.len() < size {
            let taken = members.iter().filter(|&&v| is_used[v as usize]).count();
            let biased = taken < used.len() && rng.gen_bool(cfg.overlap_bias);
            let candidate = if biased {
                used[rng.gen_range(0..used.len())]
            } else {
                rng.gen_range(0..cfg.n as u64)
            };
            if !members.contains(&candidate) {
                members.push(candidate);
            }
        }
        for &v in &members {
            if !is_used[v as usize] {
                is_used[v as usize] = true;
                used.push(v);
            }
        }
        edges.push(members.clone());
    }
    Ok(Hypergraph::from_token_lists(edges).expect("generated hyperedges are non-empty"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n: usize, m: usize, max_size: usize, bias: f64, seed: u64) -> GenConfig {
        GenConfig {
            n,
            m,
            max_size,
            overlap_bias: bias,
            seed,
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let c = cfg(10, 5, 3, 0.5, 7);
        assert_eq!(generate_random(&c).unwrap(), generate_random(&c).unwrap());
        let other = generate_random(&cfg(10, 5, 3, 0.5, 8)).unwrap();
        assert_eq!(generate_random(&c).unwrap().num_hyperedges(), other.num_hyperedges());
    }

    #[test]
    fn sizes_in_range() {
        let h = generate_random(&cfg(30, 50, 4, 0.7, 3)).unwrap();
        assert_eq!(h.num_hyperedges(), 50);
        assert!(h.hyperedges().all(|e| (1..=4).contains(&h.edge_size(e))));
        assert!(h.num_vertices() <= 30);
    }

    #[test]
    fn singleton_hyperedges() {
        let h = generate_random(&cfg(8, 12, 1, 0.9, 1)).unwrap();
        assert!(h.hyperedges().all(|e| h.edge_size(e) == 1));
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(generate_random(&cfg(3, 5, 4, 0.5, 0)).is_err());
        assert!(generate_random(&cfg(0, 5, 1, 0.5, 0)).is_err());
        assert!(generate_random(&cfg(5, 5, 0, 0.5, 0)).is_err());
        assert!(generate_random(&cfg(5, 5, 2, 1.5, 0)).is_err());
    }

    #[test]
    fn full_bias_terminates() {
        let h = generate_random(&cfg(6, 30, 6, 1.0, 11)).unwrap();
        assert_eq!(h.num_hyperedges(), 30);
    }

    fn mean_pairwise_overlap(h: &Hypergraph) -> f64 {
        let m = h.num_hyperedges() as u32;
        let mut total = 0u64;
        let mut pairs = 0u64;
        for a in 0..m {
            for b in a + 1..m {
                total += u64::from(h.overlap_degree(a, b).unwrap());
                pairs += 1;
            }
        }
        total as f64 / pairs as f64
    }

    #[test]
    fn bias_raises_mean_overlap() {
        let (mut low, mut high) = (0.0, 0.0);
        for seed in 0..100 {
            low += mean_pairwise_overlap(&generate_random(&cfg(60, 40, 6, 0.0, seed)).unwrap());
            high += mean_pairwise_overlap(&generate_random(&cfg(60, 40, 6, 0.9, seed)).unwrap());
        }
        assert!(high > low, "bias 0.9 mean {high} vs bias 0 mean {low}");
    }
}
