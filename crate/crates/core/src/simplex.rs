//! Monotone maps between finite ordinals `[n] = {0 < 1 < ... < n}`.

use std::fmt;

use crate::error::{Error, Result};

/// A non-decreasing map `[domain] -> [codomain]`, stored by its values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplicialMap {
    domain: usize,
    codomain: usize,
    values: Vec<usize>,
}

impl SimplicialMap {
    pub fn new(values: Vec<usize>, domain: usize, codomain: usize) -> Result<Self> {
        if values.len() != domain + 1 {
            return Err(Error::ArityMismatch {
                domain,
                got: values.len(),
            });
        }
        if let Some(&value) = values.iter().find(|&&v| v > codomain) {
            return Err(Error::ValueOutOfRange { value, codomain });
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::NotMonotone(values));
        }
        Ok(Self {
            domain,
            codomain,
            values,
        })
    }

    /// Builds a map from a non-empty value sequence; the codomain is given explicitly.
    pub fn from_values(values: &[usize], codomain: usize) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::ArityMismatch { domain: 0, got: 0 });
        }
        Self::new(values.to_vec(), values.len() - 1, codomain)
    }

    pub fn identity(n: usize) -> Self {
        Self {
            domain: n,
            codomain: n,
            values: (0..=n).collect(),
        }
    }

    pub fn domain(&self) -> usize {
        self.domain
    }

    pub fn codomain(&self) -> usize {
        self.codomain
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    /// Preimage of `j` (a contiguous run, possibly empty).
    pub fn preimage(&self, j: usize) -> impl Iterator<Item = usize> + '_ {
        self.values
            .iter()
            .enumerate()
            .filter(move |(_, &v)| v == j)
            .map(|(i, _)| i)
    }

    /// Restriction to the initial segment `[n-1]`; `None` when the domain is `[0]`.
    pub fn restrict_initial(&self) -> Option<Self> {
        if self.domain == 0 {
            return None;
        }
        Some(Self {
            domain: self.domain - 1,
            codomain: self.codomain,
            values: self.values[..self.domain].to_vec(),
        })
    }
}

impl fmt::Display for SimplicialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// `g ∘ f`.
pub fn compose(g: &SimplicialMap, f: &SimplicialMap) -> Result<SimplicialMap> {
    if f.codomain != g.domain {
        return Err(Error::CompositionMismatch {
            inner_codomain: f.codomain,
            outer_domain: g.domain,
        });
    }
    Ok(SimplicialMap {
        domain: f.domain,
        codomain: g.codomain,
        values: f.values.iter().map(|&i| g.values[i]).collect(),
    })
}

/// The face map `δ_k : [n-1] -> [n]` skipping `k`.
pub fn face_map(n: usize, k: usize) -> Result<SimplicialMap> {
    if n == 0 || k > n {
        return Err(Error::FaceOutOfRange { n, k });
    }
    let values = (0..n).map(|x| if x < k { x } else { x + 1 }).collect();
    Ok(SimplicialMap {
        domain: n - 1,
        codomain: n,
        values,
    })
}

/// All monotone maps `[n] -> [m]`, lexicographic in their value sequences.
pub fn monotone_maps(n: usize, m: usize) -> Vec<SimplicialMap> {
    let mut out = Vec::new();
    let mut values = vec![0usize; n + 1];
    loop {
        out.push(SimplicialMap {
            domain: n,
            codomain: m,
            values: values.clone(),
        });
        // increment the rightmost position that can still grow, reset the tail
        let Some(pos) = (0..=n).rev().find(|&i| values[i] < m) else {
            break;
        };
        let v = values[pos] + 1;
        for slot in &mut values[pos..] {
            *slot = v;
        }
    }
    out
}

/// `I(n, m)`: strictly increasing maps `[n] -> [m]`, lexicographic.
pub fn injective_maps(n: usize, m: usize) -> Vec<SimplicialMap> {
    if n > m {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut values: Vec<usize> = (0..=n).collect();
    loop {
        out.push(SimplicialMap {
            domain: n,
            codomain: m,
            values: values.clone(),
        });
        // position i may hold at most m - n + i
        let Some(pos) = (0..=n).rev().find(|&i| values[i] < m - n + i) else {
            break;
        };
        values[pos] += 1;
        for i in pos + 1..=n {
            values[i] = values[i - 1] + 1;
        }
    }
    out
}

/// All monotone `h : [n] -> [p]` with `g ∘ h = f`.
pub fn factor_through(f: &SimplicialMap, g: &SimplicialMap) -> Vec<SimplicialMap> {
    if f.codomain != g.codomain {
        return Vec::new();
    }
    // choices for h(i) are the preimages of f(i); monotonicity prunes the product
    let choices: Vec<Vec<usize>> = f.values.iter().map(|&v| g.preimage(v).collect()).collect();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(f.domain + 1);
    fn walk(
        choices: &[Vec<usize>],
        current: &mut Vec<usize>,
        out: &mut Vec<SimplicialMap>,
        domain: usize,
        codomain: usize,
    ) {
        let i = current.len();
        if i == choices.len() {
            out.push(SimplicialMap {
                domain,
                codomain,
                values: current.clone(),
            });
            return;
        }
        for &c in &choices[i] {
            if current.last().is_some_and(|&prev| prev > c) {
                continue;
            }
            current.push(c);
            walk(choices, current, out, domain, codomain);
            current.pop();
        }
    }
    walk(&choices, &mut current, &mut out, f.domain, g.domain);
    out
}

/// All monotone `g : [n+1] -> [m]` with `g ∘ δ_k = f`, in increasing order of the inserted value.
pub fn coface_factorizations(f: &SimplicialMap, k: usize) -> Vec<SimplicialMap> {
    let n = f.domain;
    if k > n + 1 {
        return Vec::new();
    }
    // g agrees with f off position k; g(k) is squeezed between its neighbours
    let lo = if k == 0 { 0 } else { f.values[k - 1] };
    let hi = if k == n + 1 { f.codomain } else { f.values[k] };
    (lo..=hi)
        .map(|v| {
            let mut values = f.values.clone();
            values.insert(k, v);
            SimplicialMap {
                domain: n + 1,
                codomain: f.codomain,
                values,
            }
        })
        .collect()
}
