//! The Weyl algebra as a quotient of the tensor algebra: words in the
//! generators `y₁…y_{2n}`, rewritten to sorted order with
//! `y_a y_b = y_b y_a + iħ Λ^{ab}`.

use std::collections::BTreeMap;

use super::cx::{q, Cx};

/// `(ħ power, sorted word) → coefficient`.
pub type Normal = BTreeMap<(u32, Vec<usize>), Cx>;

fn add_into(out: &mut Normal, key: (u32, Vec<usize>), c: &Cx) {
    if c.is_zero() {
        return;
    }
    let slot = out.entry(key.clone()).or_insert_with(Cx::zero);
    *slot = slot.add(c);
    if slot.is_zero() {
        out.remove(&key);
    }
}

fn bracket(n: usize, a: usize, b: usize) -> i64 {
    if a < n && b == a + n {
        1
    } else if a >= n && b + n == a {
        -1
    } else {
        0
    }
}

/// Rewrite one word to sorted form.
pub fn normal_order_word(n: usize, word: &[usize], memo: &mut BTreeMap<Vec<usize>, Normal>) -> Normal {
    if let Some(r) = memo.get(word) {
        return r.clone();
    }
    let mut out = Normal::new();
    match (0..word.len().saturating_sub(1)).find(|&p| word[p] > word[p + 1]) {
        None => add_into(&mut out, (0, word.to_vec()), &Cx::one()),
        Some(p) => {
            let (a, b) = (word[p], word[p + 1]);
            let mut swapped = word.to_vec();
            swapped.swap(p, p + 1);
            for (k, c) in normal_order_word(n, &swapped, memo) {
                add_into(&mut out, k, &c);
            }
            let s = bracket(n, a, b);
            if s != 0 {
                let mut shorter = word[..p].to_vec();
                shorter.extend_from_slice(&word[p + 2..]);
                let factor = Cx::i().scale(&q(s, 1));
                for ((h, w), c) in normal_order_word(n, &shorter, memo) {
                    add_into(&mut out, (h + 1, w), &c.mul(&factor));
                }
            }
        }
    }
    memo.insert(word.to_vec(), out.clone());
    out
}

fn distinct_permutations(items: &mut Vec<usize>, start: usize, out: &mut Vec<Vec<usize>>) {
    if start == items.len() {
        out.push(items.clone());
        return;
    }
    let mut seen = Vec::new();
    for i in start..items.len() {
        if seen.contains(&items[i]) {
            continue;
        }
        seen.push(items[i]);
        items.swap(start, i);
        distinct_permutations(items, start + 1, out);
        items.swap(start, i);
    }
}

/// Symmetric (Weyl-ordered) monomial `y^α` as a sorted-order element.
pub fn from_symmetric(n: usize, alpha: &[u32], memo: &mut BTreeMap<Vec<usize>, Normal>) -> Normal {
    let mut letters: Vec<usize> = Vec::new();
    for (i, &e) in alpha.iter().enumerate() {
        letters.extend(std::iter::repeat_n(i, e as usize));
    }
    let total: u32 = alpha.iter().sum();
    let fact = |k: u32| (1..=k as i64).product::<i64>();
    let weight = q(alpha.iter().map(|&e| fact(e)).product(), fact(total));
    let mut perms = Vec::new();
    distinct_permutations(&mut letters, 0, &mut perms);
    let mut out = Normal::new();
    for w in perms {
        for (k, c) in normal_order_word(n, &w, memo) {
            add_into(&mut out, k, &c.scale(&weight));
        }
    }
    out
}

/// Product of two sorted-order elements, dropping total degree above `trunc`.
pub fn product(n: usize, a: &Normal, b: &Normal, trunc: u32, memo: &mut BTreeMap<Vec<usize>, Normal>) -> Normal {
    let mut out = Normal::new();
    for ((ha, wa), ca) in a {
        for ((hb, wb), cb) in b {
            if 2 * (ha + hb) + (wa.len() + wb.len()) as u32 > trunc {
                continue;
            }
            let mut w = wa.clone();
            w.extend_from_slice(wb);
            for ((h, word), c) in normal_order_word(n, &w, memo) {
                add_into(&mut out, (h + ha + hb, word), &c.mul(&ca.mul(cb)));
            }
        }
    }
    out
}

pub fn add(a: &Normal, b: &Normal) -> Normal {
    let mut out = a.clone();
    for (k, c) in b {
        add_into(&mut out, k.clone(), c);
    }
    out
}

pub fn scale(a: &Normal, c: &Cx) -> Normal {
    let mut out = Normal::new();
    for (k, x) in a {
        add_into(&mut out, k.clone(), &x.mul(c));
    }
    out
}

pub fn shift_hbar(a: &Normal, p: u32) -> Normal {
    a.iter().map(|((h, w), c)| ((h + p, w.clone()), c.clone())).collect()
}
