use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Chain sizes `k_1 ≥ k_2 ≥ k_3 ≥ k_4 ≥ 1`.
pub type ChainSizes = [u32; 4];

fn pairs(k: u32) -> u64 {
    k as u64 * (k as u64).saturating_sub(1) / 2
}

/// All chain sizes with `Σ C(k_i, 2) = r` and `k_1 + k_2 + k_3 ≤ v`,
/// lexicographically descending.
pub fn four_square_plans(r: u64, v: u32) -> Vec<ChainSizes> {
    let mut out = Vec::new();
    let mut k1 = 1u32;
    while pairs(k1) <= r {
        for k2 in 1..=k1 {
            let r2 = pairs(k1) + pairs(k2);
            if r2 > r {
                break;
            }
            for k3 in 1..=k2 {
                let r3 = r2 + pairs(k3);
                if r3 > r {
                    break;
                }
                for k4 in 1..=k3 {
                    if r3 + pairs(k4) == r && k1 + k2 + k3 <= v {
                        out.push([k1, k2, k3, k4]);
                    }
                }
            }
        }
        k1 += 1;
    }
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// `a_i = 2k_i − 1`, for which `8r + 4 = Σ a_i²` and `a_1 + a_2 + a_3 ≤ 2v − 3`.
pub fn odd_square_form(k: &ChainSizes) -> [u64; 4] {
    k.map(|x| 2 * x as u64 - 1)
}

/// A singularity budget realized by four plane chains of rulings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainPlan {
    pub r: u64,
    pub sizes: ChainSizes,
    /// Ruling parameters of each chain; list `i` has `sizes[i]` entries.
    pub params: [Vec<i64>; 4],
}

impl ChainPlan {
    /// Plan with the smallest distinct nonnegative integers as parameters.
    pub fn with_default_params(sizes: ChainSizes, v: u32) -> Result<Self> {
        let mut next = 0i64;
        let params = sizes.map(|k| {
            let list: Vec<i64> = (next..next + k as i64).collect();
            next += k as i64;
            list
        });
        Self::new(sizes, params, v)
    }

    pub fn new(sizes: ChainSizes, params: [Vec<i64>; 4], v: u32) -> Result<Self> {
        if sizes.windows(2).any(|w| w[0] < w[1]) || sizes[3] < 1 {
            return Err(Error::PlanInfeasible(format!("chain sizes {sizes:?} must be non-increasing and >= 1")));
        }
        for i in 0..4 {
            for j in i + 1..4 {
                for l in j + 1..4 {
                    if sizes[i] + sizes[j] + sizes[l] > v {
                        return Err(Error::PlanInfeasible(format!(
                            "chains {i}, {j}, {l} have {} rulings in total, more than v = {v}",
                            sizes[i] + sizes[j] + sizes[l]
                        )));
                    }
                }
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        for (k, list) in sizes.iter().zip(&params) {
            if list.len() != *k as usize {
                return Err(Error::PlanInfeasible(format!(
                    "chain of size {k} has {} parameters",
                    list.len()
                )));
            }
            for s in list {
                if !seen.insert(*s) {
                    return Err(Error::DuplicateParameter(s.to_string()));
                }
            }
        }
        Ok(ChainPlan {
            r: sizes.iter().map(|&k| pairs(k)).sum(),
            sizes,
            params,
        })
    }

    pub fn all_params(&self) -> impl Iterator<Item = i64> + '_ {
        self.params.iter().flatten().copied()
    }

    /// The `C(k_i, 2)` parameter pairs inside each chain.
    pub fn planted_pairs(&self) -> Vec<[i64; 2]> {
        let mut out = Vec::new();
        for list in &self.params {
            for a in 0..list.len() {
                for b in a + 1..list.len() {
                    let (x, y) = (list[a].min(list[b]), list[a].max(list[b]));
                    out.push([x, y]);
                }
            }
        }
        out
    }
}
