//! Auxiliary votes that set relative scores.

use crate::election::LinearOrder;

use super::ReductionError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PaddingRule {
    KApproval(usize),
    Borda,
    /// Top-ℓ counts, i.e. ℓ-approval.
    BucklinLevel(usize),
}

/// Raising the base score past this gives up.
const BASE_LIMIT: i64 = 1 << 20;

/// Votes which, added to a profile with scores `current`, make every named candidate (`Some`
/// gap) score exactly its gap above a common base and leave every filler (`None`) strictly below
/// all named candidates.
pub fn score_gap_padding(
    m: usize,
    rule: PaddingRule,
    current: &[i64],
    gaps: &[Option<i64>],
) -> Result<Vec<LinearOrder>, ReductionError> {
    if current.len() != m || gaps.len() != m {
        return Err(ReductionError::Precondition(format!("padding over {m} candidates given {} scores", current.len())));
    }
    match rule {
        PaddingRule::KApproval(k) | PaddingRule::BucklinLevel(k) => {
            if k == 0 || k >= m {
                return Err(ReductionError::Precondition(format!("k = {k} outside 1..{m}")));
            }
            approval_padding(m, k, current, gaps)
        }
        PaddingRule::Borda => borda_padding(m, current, gaps),
    }
}

fn approval_padding(m: usize, k: usize, current: &[i64], gaps: &[Option<i64>]) -> Result<Vec<LinearOrder>, ReductionError> {
    let named: Vec<(usize, i64)> = (0..m).filter_map(|a| gaps[a].map(|g| (a, g))).collect();
    let fillers: Vec<usize> = (0..m).filter(|&a| gaps[a].is_none()).collect();
    let Some(gmin) = named.iter().map(|x| x.1).min() else {
        return Ok(Vec::new());
    };
    let start = named.iter().map(|&(a, g)| current[a] - g).max().unwrap().max(1 - gmin).max(1);
    for base in start..start + BASE_LIMIT {
        // votes needed per named candidate
        let need: Vec<(usize, i64)> = named.iter().map(|&(a, g)| (a, base + g - current[a])).collect();
        let sum: i64 = need.iter().map(|x| x.1).sum();
        let most = need.iter().map(|x| x.1).max().unwrap();
        let v = most.max((sum + k as i64 - 1) / k as i64);
        let caps: Vec<i64> = fillers.iter().map(|&f| v.min(base + gmin - 1 - current[f])).collect();
        if caps.iter().any(|&c| c < 0) {
            continue;
        }
        let mut rem = k as i64 * v - sum;
        if caps.iter().sum::<i64>() < rem {
            continue;
        }
        // spread the surplus slots thinly over the fillers
        let mut extra = vec![0i64; fillers.len()];
        while rem > 0 {
            for (j, e) in extra.iter_mut().enumerate() {
                if rem > 0 && *e < caps[j] {
                    *e += 1;
                    rem -= 1;
                }
            }
        }
        let slots: Vec<usize> = need
            .iter()
            .copied()
            .chain(fillers.iter().copied().zip(extra))
            .flat_map(|(a, n)| std::iter::repeat_n(a, n as usize))
            .collect();
        let v = v as usize;
        let mut approved = vec![Vec::new(); v];
        for (j, a) in slots.into_iter().enumerate() {
            approved[j % v].push(a);
        }
        return Ok(approved.into_iter().map(|top| approval_vote(m, top)).collect());
    }
    Err(ReductionError::Unrealisable(format!("candidate {}", named[0].0)))
}

fn approval_vote(m: usize, mut top: Vec<usize>) -> LinearOrder {
    top.sort_unstable();
    let rest: Vec<usize> = (0..m).filter(|a| !top.contains(a)).collect();
    top.extend(rest);
    LinearOrder::from_indices(&top)
}

fn borda_padding(m: usize, current: &[i64], gaps: &[Option<i64>]) -> Result<Vec<LinearOrder>, ReductionError> {
    let named: Vec<(usize, i64)> = (0..m).filter_map(|a| gaps[a].map(|g| (a, g))).collect();
    let fillers: Vec<usize> = (0..m).filter(|&a| gaps[a].is_none()).collect();
    let Some(gmin) = named.iter().map(|x| x.1).min() else {
        return Ok(Vec::new());
    };
    let total: i64 = current.iter().sum();
    let gsum: i64 = named.iter().map(|x| x.1).sum();
    let (nn, nf) = (named.len() as i64, fillers.len() as i64);
    let mut target = vec![0i64; m];
    if nf == 0 {
        // the named scores alone must use up the total
        if (total - gsum).rem_euclid(nn) != 0 {
            return Err(ReductionError::Unrealisable(format!("candidate {}", named[0].0)));
        }
        let base = (total - gsum).div_euclid(nn);
        for &(a, g) in &named {
            target[a] = base + g;
        }
    } else {
        // smallest base whose leftover fits under the filler cap base + gmin - 1
        let base = div_ceil(total - gsum - nf * (gmin - 1), nn + nf);
        for &(a, g) in &named {
            target[a] = base + g;
        }
        let rem = total - gsum - nn * base;
        let (q, r) = (rem.div_euclid(nf), rem.rem_euclid(nf));
        for (i, &f) in fillers.iter().enumerate() {
            target[f] = q + (i < r as usize) as i64;
        }
    }
    let delta: Vec<i64> = (0..m).map(|a| target[a] - current[a]).collect();
    Ok(transfer_pairs(m, delta))
}

fn div_ceil(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

/// Vote pairs realising zero-sum score changes: a pair with a first and b at position j in one
/// vote, and the reverse with a and b swapped in the other, moves j points from b to a.
fn transfer_pairs(m: usize, mut delta: Vec<i64>) -> Vec<LinearOrder> {
    let mut votes = Vec::new();
    loop {
        let a = (0..m).max_by_key(|&z| (delta[z], std::cmp::Reverse(z))).unwrap();
        let b = (0..m).min_by_key(|&z| (delta[z], z)).unwrap();
        if delta[a] <= 0 {
            break;
        }
        let j = delta[a].min(-delta[b]).min(m as i64 - 1) as usize;
        let rest: Vec<usize> = (0..m).filter(|&z| z != a && z != b).collect();
        let mut s1 = vec![a];
        s1.extend_from_slice(&rest[..j - 1]);
        s1.push(b);
        s1.extend_from_slice(&rest[j - 1..]);
        let mut s2: Vec<usize> = s1.iter().rev().copied().collect();
        for z in s2.iter_mut() {
            if *z == a {
                *z = b;
            } else if *z == b {
                *z = a;
            }
        }
        votes.push(LinearOrder::from_indices(&s1));
        votes.push(LinearOrder::from_indices(&s2));
        delta[a] -= j as i64;
        delta[b] += j as i64;
    }
    votes
}

/// McGarvey pairs: each pair (hi lo rest, rest reversed hi lo) raises the margin of hi over lo
/// by 2 and leaves every other margin alone. `current` and `target` are row-major m×m margins.
pub fn margin_padding(m: usize, current: &[i64], target: &[i64]) -> Result<Vec<LinearOrder>, ReductionError> {
    let mut votes = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            let d = target[a * m + b] - current[a * m + b];
            if d % 2 != 0 {
                return Err(ReductionError::Unrealisable(format!("margin of {a} over {b} has the wrong parity")));
            }
            let (hi, lo) = if d > 0 { (a, b) } else { (b, a) };
            let rest: Vec<usize> = (0..m).filter(|&z| z != a && z != b).collect();
            let mut up = vec![hi, lo];
            up.extend_from_slice(&rest);
            let mut down: Vec<usize> = rest.iter().rev().copied().collect();
            down.extend([hi, lo]);
            for _ in 0..d.abs() / 2 {
                votes.push(LinearOrder::from_indices(&up));
                votes.push(LinearOrder::from_indices(&down));
            }
        }
    }
    Ok(votes)
}
