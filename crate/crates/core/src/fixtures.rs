//! Named hypergroups: the nine-element canonical example, its quotient by
//! `{e, a}`, small groups, total hypergroups and a few standard canonical
//! and complete constructions. Together they form the test corpus.

use crate::groups::{self, GroupTable};
use crate::hyper::HyperTable;
use crate::set::ElementSet;

/// The nine-element canonical hypergroup on `e a b c x y z u v`.
pub fn h9() -> HyperTable {
    HyperTable::from_labels(
        &["e", "a", "b", "c", "x", "y", "z", "u", "v"],
        &[
            &["e", "a", "b", "c", "x", "y", "z", "u", "v"],
            &["a", "e", "c", "b", "x", "y", "u", "z", "v"],
            &["b", "c", "e", "a", "y", "x", "z", "u", "v"],
            &["c", "b", "a", "e", "y", "x", "u", "z", "v"],
            &["x", "x", "y", "y", "b,c", "e,a", "v", "v", "z,u"],
            &["y", "y", "x", "x", "e,a", "b,c", "v", "v", "z,u"],
            &["z", "u", "z", "u", "v", "v", "a,c", "e,b", "x,y"],
            &["u", "z", "u", "z", "v", "v", "e,b", "a,c", "x,y"],
            &["v", "v", "v", "v", "z,u", "z,u", "x,y", "x,y", "e,a,b,c"],
        ],
    )
    .expect("h9 table is well formed")
}

/// `h9 / {e, a}` as printed, with cosets labelled by their representatives.
pub fn h9_quotient() -> HyperTable {
    HyperTable::from_labels(
        &["K", "b∘K", "x∘K", "y∘K", "z∘K", "v∘K"],
        &[
            &["K", "b∘K", "x∘K", "y∘K", "z∘K", "v∘K"],
            &["b∘K", "K", "y∘K", "x∘K", "z∘K", "v∘K"],
            &["x∘K", "y∘K", "b∘K", "K", "v∘K", "z∘K"],
            &["y∘K", "x∘K", "K", "b∘K", "v∘K", "z∘K"],
            &["z∘K", "z∘K", "v∘K", "v∘K", "K,b∘K", "x∘K,y∘K"],
            &["v∘K", "v∘K", "z∘K", "z∘K", "x∘K,y∘K", "K,b∘K"],
        ],
    )
    .expect("h9 quotient table is well formed")
}

/// Krasner's hyperfield additive hypergroup on `{0, 1}` with `1 + 1 = {0, 1}`.
pub fn krasner() -> HyperTable {
    HyperTable::from_labels(&["0", "1"], &[&["0", "1"], &["1", "0,1"]]).unwrap()
}

/// Additive hypergroup of the sign hyperfield on `{0, +, -}`.
pub fn sign() -> HyperTable {
    HyperTable::from_labels(
        &["0", "+", "-"],
        &[&["0", "+", "-"], &["+", "+", "0,+,-"], &["-", "0,+,-", "-"]],
    )
    .unwrap()
}

/// Orbits of `Z_n` under `x ↦ -x`, with the induced hyperoperation. Orbit
/// `k` is `{k, n-k}` and is labelled `k`.
pub fn cyclic_mod_sign(n: usize) -> HyperTable {
    let m = n / 2 + 1;
    let orbit = |x: usize| x.min(n - x);
    let mut cells = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            let mut s = ElementSet::EMPTY;
            for a in [i, (n - i) % n] {
                for b in [j, (n - j) % n] {
                    s.insert(orbit((a + b) % n));
                }
            }
            cells.push(s);
        }
    }
    HyperTable::new((0..m).map(|k| k.to_string()).collect(), cells).unwrap()
}

/// `x ∘ y = {x, y}` on `n` points.
pub fn join(n: usize) -> HyperTable {
    let names = (0..n).map(|i| format!("j{i}")).collect();
    let cells = (0..n * n)
        .map(|i| ElementSet::singleton(i / n) | ElementSet::singleton(i % n))
        .collect();
    HyperTable::new(names, cells).unwrap()
}

/// Complete hypergroup over a group: element `g` of `G` is inflated to
/// `sizes[g]` points and `x ∘ y` is the whole block of the product.
pub fn complete(g: &GroupTable, sizes: &[usize]) -> HyperTable {
    assert_eq!(sizes.len(), g.n());
    let mut block_of = Vec::new();
    let mut names = Vec::new();
    for (k, &s) in sizes.iter().enumerate() {
        for i in 0..s {
            block_of.push(k);
            names.push(if s == 1 {
                g.name(k).to_string()
            } else {
                format!("{}'{}", g.name(k), i)
            });
        }
    }
    let n = block_of.len();
    let blocks: Vec<ElementSet> = (0..g.n())
        .map(|k| (0..n).filter(|&x| block_of[x] == k).collect())
        .collect();
    let cells = (0..n * n)
        .map(|i| blocks[g.mul(block_of[i / n], block_of[i % n])])
        .collect();
    HyperTable::new(names, cells).unwrap()
}

pub fn group_lift(g: &GroupTable) -> HyperTable {
    HyperTable::from_group(g)
}

/// Looks up a fixture by name: `h9`, `h9-quotient`, `z1`..`z12`, `v4`,
/// `s3`, `t1`..`t8`, `krasner`, `sign`, `zN-sign`, `join3`, `join4`.
pub fn by_name(name: &str) -> Option<HyperTable> {
    let num = |prefix: &str| -> Option<usize> {
        name.strip_prefix(prefix)?.parse().ok()
    };
    match name {
        "h9" => return Some(h9()),
        "h9-quotient" => return Some(h9_quotient()),
        "v4" => return Some(group_lift(&groups::fixtures::v4())),
        "s3" => return Some(group_lift(&groups::fixtures::s3())),
        "krasner" => return Some(krasner()),
        "sign" => return Some(sign()),
        _ => {}
    }
    if let Some(n) = name.strip_suffix("-sign").and_then(|s| s.strip_prefix('z')) {
        let n: usize = n.parse().ok()?;
        return (2..=24).contains(&n).then(|| cyclic_mod_sign(n));
    }
    if let Some(n) = num("z") {
        return (1..=12).contains(&n).then(|| group_lift(&groups::fixtures::cyclic(n)));
    }
    if let Some(n) = num("t") {
        return (1..=8).contains(&n).then(|| HyperTable::total(n).unwrap());
    }
    if let Some(n) = num("join") {
        return (1..=8).contains(&n).then(|| join(n));
    }
    None
}

/// Names accepted by [`by_name`] that are listed in help output.
pub const NAMED: &[&str] = &[
    "h9", "h9-quotient", "z2", "z3", "z4", "v4", "s3", "t2", "t3", "t4", "krasner", "sign",
];

/// The test corpus: every instance is a hypergroup.
pub fn corpus() -> Vec<(String, HyperTable)> {
    use groups::fixtures::{cyclic, s3, v4};
    let mut out: Vec<(String, HyperTable)> = Vec::new();
    let mut push = |name: &str, h: HyperTable| out.push((name.to_string(), h));
    for n in 1..=5 {
        push(&format!("z{n}"), group_lift(&cyclic(n)));
    }
    push("v4", group_lift(&v4()));
    for n in 2..=5 {
        push(&format!("t{n}"), HyperTable::total(n).unwrap());
    }
    push("krasner", krasner());
    push("sign", sign());
    for n in 4..=9 {
        push(&format!("z{n}-sign"), cyclic_mod_sign(n));
    }
    push("join3", join(3));
    push("join4", join(4));
    push("complete-z2-12", complete(&cyclic(2), &[1, 2]));
    push("complete-z2-21", complete(&cyclic(2), &[2, 1]));
    push("complete-z3-211", complete(&cyclic(3), &[2, 1, 1]));
    push("complete-z2-22", complete(&cyclic(2), &[2, 2]));
    push("s3", group_lift(&s3()));
    push("z6", group_lift(&cyclic(6)));
    push("t6", HyperTable::total(6).unwrap());
    push("z10-sign", cyclic_mod_sign(10));
    push("z11-sign", cyclic_mod_sign(11));
    push("complete-v4-1112", complete(&v4(), &[1, 1, 1, 2]));
    push("h9-quotient", h9_quotient());
    push("complete-s3-211111", complete(&s3(), &[2, 1, 1, 1, 1, 1]));
    push("h9", h9());
    out
}
