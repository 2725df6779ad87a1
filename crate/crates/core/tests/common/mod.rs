//! Test-only reference checks. Everything here is deliberately quadratic or
//! worse and avoids the engine's data structures.

#![allow(dead_code)]

use std::collections::BTreeSet;

use morphic_core::{alpha_naive, FactorizationResult, Letter, Morphism, PosIndex, Word};
use rand::Rng;

/// Common left/right extension lengths of all occurrences of `a`, by direct
/// comparison of every pair of occurrence contexts.
pub fn brute_neighborhood(w: &Word, a: Letter) -> (usize, usize) {
    let occ: Vec<usize> = (1..=w.len()).filter(|&p| w.at(p) == a).collect();
    let agree = |k: isize| {
        occ.iter().all(|&p| {
            let q = p as isize + k;
            q >= 1
                && q <= w.len() as isize
                && w.at(q as usize) == w.at((occ[0] as isize + k) as usize)
        })
    };
    let mut right = 0;
    while agree(right as isize + 1) {
        right += 1;
    }
    let mut left = 0;
    while agree(-(left as isize) - 1) {
        left += 1;
    }
    (left, right)
}

/// Least cut sets containing the boundary cuts, the delimiting cuts of every
/// expanding occurrence and its neighborhood borders, closed under window
/// synchronization. Computed by naive fixpoint iteration.
pub fn brute_closure(w: &Word, e: &[Letter]) -> (BTreeSet<usize>, BTreeSet<usize>) {
    let n = w.len();
    let mut l = BTreeSet::from([0, n]);
    let mut r = BTreeSet::from([0, n]);
    let mut windows = Vec::new();
    for &a in e {
        let (lam, rho) = brute_neighborhood(w, a);
        let occ: Vec<usize> = (1..=n).filter(|&p| w.at(p) == a).collect();
        for &k in &occ {
            l.insert(k - 1);
            r.insert(k);
            l.insert(k + rho);
            r.insert(k - lam - 1);
        }
        windows.push((occ, lam, rho));
    }
    loop {
        let before = (l.len(), r.len());
        for (occ, lam, rho) in &windows {
            for &k in occ {
                for &k2 in occ {
                    for t in 0..lam + rho + 2 {
                        let (c, c2) = (k - lam - 1 + t, k2 - lam - 1 + t);
                        if l.contains(&c) {
                            l.insert(c2);
                        }
                        if r.contains(&c) {
                            r.insert(c2);
                        }
                    }
                }
            }
        }
        if (l.len(), r.len()) == before {
            return (l, r);
        }
    }
}

/// Checks every closure and covering condition on the final state; returns a
/// description of the first failure.
pub fn stability_audit(w: &Word, res: &FactorizationResult) -> Result<(), String> {
    let n = w.len();
    let l: BTreeSet<usize> = res.left_cuts.iter().copied().collect();
    let r: BTreeSet<usize> = res.right_cuts.iter().copied().collect();
    let e: BTreeSet<Letter> = res.expanding.iter().copied().collect();

    if !(l.contains(&0) && l.contains(&n) && r.contains(&0) && r.contains(&n)) {
        return Err("boundary cuts missing".into());
    }
    for &a in &e {
        let (lam, rho) = brute_neighborhood(w, a);
        let occ: Vec<usize> = (1..=n).filter(|&p| w.at(p) == a).collect();
        for &k in &occ {
            if !l.contains(&(k - 1)) || !r.contains(&k) {
                return Err(format!("occurrence {k} of {} not delimited", w.symbol(a)));
            }
            if !l.contains(&(k + rho)) || !r.contains(&(k - lam - 1)) {
                return Err(format!("neighborhood of {k} not delimited"));
            }
            for &k2 in &occ {
                for t in 0..lam + rho + 2 {
                    let (c, c2) = (k - lam - 1 + t, k2 - lam - 1 + t);
                    if l.contains(&c) != l.contains(&c2) || r.contains(&c) != r.contains(&c2) {
                        return Err(format!("windows of {k} and {k2} disagree at offset {t}"));
                    }
                }
            }
        }
    }
    let idx = PosIndex::build(w);
    for &i in &l {
        for &j in r.range(i + 1..) {
            let k = alpha_naive(w, &idx, i, j).unwrap();
            if !e.contains(&w.at(k)) {
                return Err(format!("stretch ({i},{j}] headed by non-expanding letter"));
            }
        }
    }
    let (bl, br) = brute_closure(w, &res.expanding);
    if bl != l || br != r {
        return Err("cut sets differ from the least closure".into());
    }
    Ok(())
}

/// Idempotent morphism with expanding letters `0..k` and erased letters
/// `k..m`; each image holds its own letter once among erased padding.
pub fn random_planted_morphism<R: Rng>(
    k: usize,
    m: usize,
    max_pad: usize,
    rng: &mut R,
) -> Vec<Vec<usize>> {
    (0..k)
        .map(|e| {
            let left = rng.gen_range(0..=max_pad);
            let right = rng.gen_range(0..=max_pad);
            let mut img: Vec<usize> = (0..left).map(|_| rng.gen_range(k..m)).collect();
            img.push(e);
            img.extend((0..right).map(|_| rng.gen_range(k..m)));
            img
        })
        .collect()
}

/// `g(u)` for a random `u` over the expanding letters of `g`: a fixed point
/// of the morphism that erases letters outside `g`'s domain.
pub fn planted_word<R: Rng>(images: &[Vec<usize>], blocks: usize, rng: &mut R) -> Word {
    let ids: Vec<usize> = (0..blocks)
        .flat_map(|_| images[rng.gen_range(0..images.len())].clone())
        .collect();
    Word::from_ids(ids)
}

pub fn has_erased_letter(f: &Morphism) -> bool {
    f.images().any(|(_, img)| img.is_empty())
}
