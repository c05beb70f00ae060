//! The outer automorphism of `S6`, defined on the transpositions `(1 k)`
//! and extended multiplicatively.

use std::collections::{HashMap, VecDeque};

use super::format::parse_cycles;

/// A permutation of `0..n` as its image list: `p[i] = p(i)`.
pub type Perm = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum S6Error {
    #[error("images do not define a homomorphism")]
    NotHomomorphism,
    #[error("a transposition is not sent to a product of three transpositions")]
    WrongClass,
    #[error("bad cycle notation: {0}")]
    Cycles(String),
}

/// `(p ∘ q)(i) = p(q(i))`.
pub fn compose(p: &Perm, q: &Perm) -> Perm {
    q.iter().map(|&i| p[i]).collect()
}

pub fn inverse(p: &Perm) -> Perm {
    let mut inv = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

pub fn identity(n: usize) -> Perm {
    (0..n).collect()
}

/// Cycle lengths, sorted, fixed points omitted.
pub fn cycle_type(p: &Perm) -> Vec<usize> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for s in 0..p.len() {
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = p[i];
            len += 1;
        }
        if len > 1 {
            out.push(len);
        }
    }
    out.sort_unstable();
    out
}

/// Cycle notation with 1-based points; `()` for the identity.
pub fn format_cycles(p: &Perm) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for s in 0..p.len() {
        if seen[s] || p[s] == s {
            seen[s] = true;
            continue;
        }
        let mut cyc = Vec::new();
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            cyc.push((i + 1).to_string());
            i = p[i];
        }
        out.push_str(&format!("({})", cyc.join(",")));
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

pub fn perm(cycles: &str) -> Result<Perm, S6Error> {
    parse_cycles(cycles, 6).map_err(S6Error::Cycles)
}

/// Images of `(1 2), …, (1 6)`.
const IMAGES: [&str; 5] = [
    "(1,4)(2,5)(3,6)",
    "(1,6)(2,4)(3,5)",
    "(1,3)(2,6)(4,5)",
    "(1,5)(2,3)(4,6)",
    "(1,2)(3,4)(5,6)",
];

/// The automorphism as a table over all 720 elements.
#[derive(Debug, Clone)]
pub struct OuterAutomorphism {
    table: HashMap<Perm, Perm>,
}

impl OuterAutomorphism {
    /// Builds and validates the map.
    pub fn new() -> Result<Self, S6Error> {
        let gens: Vec<Perm> = (2..=6)
            .map(|k| perm(&format!("(1,{k})")))
            .collect::<Result<_, _>>()?;
        let imgs: Vec<Perm> = IMAGES.iter().map(|c| perm(c)).collect::<Result<_, _>>()?;
        // breadth-first extension along right multiplication by generators
        let mut table: HashMap<Perm, Perm> = HashMap::new();
        table.insert(identity(6), identity(6));
        let mut queue = VecDeque::from([identity(6)]);
        while let Some(g) = queue.pop_front() {
            let sg = table[&g].clone();
            for (t, st) in gens.iter().zip(&imgs) {
                let h = compose(&g, t);
                let sh = compose(&sg, st);
                match table.get(&h) {
                    Some(prev) if *prev != sh => return Err(S6Error::NotHomomorphism),
                    Some(_) => {}
                    None => {
                        table.insert(h.clone(), sh);
                        queue.push_back(h);
                    }
                }
            }
        }
        if table.len() != 720 {
            return Err(S6Error::NotHomomorphism);
        }
        let aut = OuterAutomorphism { table };
        aut.validate()?;
        Ok(aut)
    }

    fn validate(&self) -> Result<(), S6Error> {
        // well-definedness above covers generators; check the full law too
        let all: Vec<&Perm> = self.table.keys().collect();
        for g in &all {
            for h in all.iter().step_by(7) {
                if self.apply(&compose(g, h)) != compose(&self.apply(g), &self.apply(h)) {
                    return Err(S6Error::NotHomomorphism);
                }
            }
        }
        let mut images: Vec<&Perm> = self.table.values().collect();
        images.sort();
        images.dedup();
        if images.len() != 720 {
            return Err(S6Error::NotHomomorphism);
        }
        for (g, sg) in &self.table {
            if cycle_type(g) == [2] && cycle_type(sg) != [2, 2, 2] {
                return Err(S6Error::WrongClass);
            }
        }
        Ok(())
    }

    pub fn apply(&self, p: &Perm) -> Perm {
        self.table[p].clone()
    }

    pub fn apply_cycles(&self, cycles: &str) -> Result<Perm, S6Error> {
        Ok(self.apply(&perm(cycles)?))
    }
}

/// Every product of the given permutations (a small closure for tests).
pub fn closure(gens: &[Perm]) -> Vec<Perm> {
    let n = gens.first().map_or(0, |g| g.len());
    let mut seen: Vec<Perm> = vec![identity(n)];
    let mut queue = VecDeque::from([identity(n)]);
    while let Some(g) = queue.pop_front() {
        for t in gens {
            let h = compose(&g, t);
            if !seen.contains(&h) {
                seen.push(h.clone());
                queue.push_back(h);
            }
        }
    }
    seen
}
