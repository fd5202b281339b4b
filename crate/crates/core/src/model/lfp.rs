use serde::Serialize;

use super::ModelError;

/// Largest cap accepted by [`lfp_inductive`].
pub const LFP_CAP_LIMIT: u64 = 1 << 16;

/// Inductive definitions whose least fixed point is the class of hereditarily finite sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Inductive {
    /// `(a, a)` for finite `a`: a set enters once all its members have.
    Fin,
    /// `(a, a)` for finitely enumerable `a`.
    Fe,
    /// `({a, b}, a ∪ {b})`, started from `∅`.
    Adj,
}

impl Inductive {
    pub const ALL: [Inductive; 3] = [Inductive::Fin, Inductive::Fe, Inductive::Adj];

    pub fn name(self) -> &'static str {
        match self {
            Inductive::Fin => "fin",
            Inductive::Fe => "fe",
            Inductive::Adj => "adj",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|d| d.name() == s)
    }
}

fn members(a: u64) -> impl Iterator<Item = u64> {
    (0..64).filter(move |i| a >> i & 1 == 1)
}

/// A bijection from `a` onto a von Neumann numeral, listed as (member, index) pairs.
fn counting(a: u64) -> Vec<(u64, usize)> {
    members(a).enumerate().map(|(k, c)| (c, k)).collect()
}

/// A surjection from a numeral onto `a`, as the list of its values.
fn enumeration(a: u64) -> Vec<u64> {
    members(a).collect()
}

/// Least fixed point of the definition among codes below `cap`, by saturation.
pub fn lfp_inductive(defn: Inductive, cap: u64) -> Result<Vec<u64>, ModelError> {
    if cap > LFP_CAP_LIMIT {
        return Err(ModelError::SizeGuard {
            what: "lfp_inductive",
            size: cap as usize,
            limit: LFP_CAP_LIMIT as usize,
        });
    }
    let n = cap as usize;
    let mut inside = vec![false; n];
    match defn {
        Inductive::Fin | Inductive::Fe => loop {
            let mut changed = false;
            for a in 0..cap {
                if inside[a as usize] {
                    continue;
                }
                let premises = match defn {
                    Inductive::Fin => counting(a).into_iter().map(|(c, _)| c).collect::<Vec<_>>(),
                    _ => enumeration(a),
                };
                if premises.iter().all(|&c| c < cap && inside[c as usize]) {
                    inside[a as usize] = true;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        },
        Inductive::Adj => {
            let mut queue = Vec::new();
            if cap > 0 {
                inside[0] = true;
                queue.push(0u64);
            }
            let mut found: Vec<u64> = queue.clone();
            while let Some(e) = queue.pop() {
                let mut fresh = Vec::new();
                for &a in &found {
                    for (x, y) in [(a, e), (e, a)] {
                        if y < 64 {
                            let z = x | 1 << y;
                            if z < cap && !inside[z as usize] {
                                inside[z as usize] = true;
                                fresh.push(z);
                            }
                        }
                    }
                }
                found.extend(&fresh);
                queue.extend(fresh);
            }
        }
    }
    Ok((0..cap).filter(|&a| inside[a as usize]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(lfp_inductive(Inductive::Adj, 16).unwrap(), (0..16).collect::<Vec<_>>());
        assert_eq!(lfp_inductive(Inductive::Fin, 4).unwrap(), vec![0, 1, 2, 3]);
        for d in Inductive::ALL {
            assert_eq!(lfp_inductive(d, 1).unwrap(), vec![0]);
            assert_eq!(lfp_inductive(d, 0).unwrap(), Vec::<u64>::new());
        }
    }

    #[test]
    fn non_power_caps() {
        for d in Inductive::ALL {
            for cap in [3, 5, 100] {
                assert_eq!(lfp_inductive(d, cap).unwrap(), (0..cap).collect::<Vec<_>>());
            }
        }
        assert!(lfp_inductive(Inductive::Fin, LFP_CAP_LIMIT + 1).is_err());
    }
}
