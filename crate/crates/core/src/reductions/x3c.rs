use std::collections::HashMap;

use super::ReductionError;

/// Largest number of sets `solve_x3c` will search over.
pub const X3C_GUARD: usize = 25;

/// An exact-cover instance. Sets have arity 3, or 4 for the restricted variant in which every
/// element lies in exactly 3 sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct X3CInstance {
    pub universe: Vec<String>,
    /// Element indices, ascending within each set.
    pub sets: Vec<Vec<usize>>,
    pub arity: usize,
}

impl X3CInstance {
    pub fn new(universe: Vec<String>, sets: Vec<Vec<usize>>) -> Result<Self, ReductionError> {
        let bad = |s: String| ReductionError::InvalidX3c(s);
        let arity = sets.first().map_or(3, |s| s.len());
        if arity != 3 && arity != 4 {
            return Err(bad(format!("set arity {arity}, expected 3 or 4")));
        }
        let mut seen = HashMap::new();
        for (i, u) in universe.iter().enumerate() {
            if seen.insert(u.as_str(), i).is_some() {
                return Err(bad(format!("element {u} declared twice")));
            }
        }
        let mut sets = sets;
        for s in &mut sets {
            if s.len() != arity {
                return Err(bad(format!("mixed set arities {arity} and {}", s.len())));
            }
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(bad("set repeats an element".into()));
            }
            if let Some(&e) = s.iter().find(|&&e| e >= universe.len()) {
                return Err(bad(format!("element index {e} outside the universe")));
            }
        }
        if arity == 3 && !universe.len().is_multiple_of(3) {
            return Err(bad(format!("universe size {} not divisible by 3", universe.len())));
        }
        if arity == 4 {
            let mut deg = vec![0usize; universe.len()];
            for s in &sets {
                for &e in s {
                    deg[e] += 1;
                }
            }
            if let Some(e) = deg.iter().position(|&d| d != 3) {
                return Err(bad(format!("element {} lies in {} sets, expected 3", universe[e], deg[e])));
            }
        }
        Ok(X3CInstance { universe, sets, arity })
    }

    /// Universe u1..u{n} with the given sets.
    pub fn numbered(n: usize, sets: Vec<Vec<usize>>) -> Result<Self, ReductionError> {
        X3CInstance::new((1..=n).map(|i| format!("u{i}")).collect(), sets)
    }

    /// Sets needed by an exact cover.
    pub fn t(&self) -> usize {
        self.universe.len() / self.arity
    }

    pub fn m(&self) -> usize {
        self.sets.len()
    }

    pub fn parse(text: &str) -> Result<Self, ReductionError> {
        let mut universe: Option<Vec<String>> = None;
        let mut sets = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |s: &str| ReductionError::InvalidX3c(format!("line {}: {s}", no + 1));
            let (key, rest) = line.split_once(':').ok_or_else(|| err("expected `key: value`"))?;
            let words: Vec<&str> = rest.split_whitespace().collect();
            match key.trim() {
                "universe" => {
                    if universe.is_some() {
                        return Err(err("universe declared twice"));
                    }
                    universe = Some(words.iter().map(|w| w.to_string()).collect());
                }
                "set" => {
                    let u = universe.as_ref().ok_or_else(|| err("set before universe"))?;
                    let set = words
                        .iter()
                        .map(|w| u.iter().position(|x| x == w).ok_or_else(|| err(&format!("unknown element {w}"))))
                        .collect::<Result<Vec<_>, _>>()?;
                    if let Some(first) = sets.first().map(|s: &Vec<usize>| s.len()) {
                        if first != set.len() {
                            return Err(err(&format!("mixed set arities {first} and {}", set.len())));
                        }
                    }
                    sets.push(set);
                }
                other => return Err(err(&format!("unknown directive {other}"))),
            }
        }
        X3CInstance::new(universe.unwrap_or_default(), sets)
    }

    pub fn render(&self) -> String {
        let mut out = format!("universe: {}\n", self.universe.join(" "));
        for s in &self.sets {
            let names: Vec<&str> = s.iter().map(|&e| self.universe[e].as_str()).collect();
            out.push_str(&format!("set: {}\n", names.join(" ")));
        }
        out
    }
}

/// An exact cover as ascending set indices, or `None`.
pub fn solve_x3c(inst: &X3CInstance) -> Result<Option<Vec<usize>>, ReductionError> {
    if inst.sets.len() > X3C_GUARD {
        return Err(ReductionError::Guard(inst.sets.len(), X3C_GUARD));
    }
    let n = inst.universe.len();
    let mut containing = vec![Vec::new(); n];
    for (i, s) in inst.sets.iter().enumerate() {
        for &e in s {
            containing[e].push(i);
        }
    }
    let mut covered = vec![false; n];
    let mut chosen = Vec::new();
    if cover(inst, &containing, &mut covered, &mut chosen) {
        chosen.sort_unstable();
        Ok(Some(chosen))
    } else {
        Ok(None)
    }
}

fn cover(inst: &X3CInstance, containing: &[Vec<usize>], covered: &mut [bool], chosen: &mut Vec<usize>) -> bool {
    let Some(e) = covered.iter().position(|&c| !c) else {
        return true;
    };
    for &i in &containing[e] {
        let s = &inst.sets[i];
        if s.iter().any(|&x| covered[x]) {
            continue;
        }
        for &x in s {
            covered[x] = true;
        }
        chosen.push(i);
        if cover(inst, containing, covered, chosen) {
            return true;
        }
        chosen.pop();
        for &x in s {
            covered[x] = false;
        }
    }
    false
}
