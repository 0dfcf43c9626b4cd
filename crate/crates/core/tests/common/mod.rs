//! Brute-force oracles, independent of the library's solver and
//! enumerator: they work from the raw constraint and axiom definitions so
//! the integration tests can cross-check the optimized paths.

use rackle_core::{Coloring, Presentation, RackTable};

/// Filters all `order^{|sheets|}` assignments through the raw constraint
/// definitions: `c(under_to) = c(under_from) * c(over)` per double,
/// `c(to) = i(c(from))` per curve, `c(s)*c(s) = c(s)` per branch.
/// Emission order is lexicographic over the declared sheet order.
pub fn brute_force_colorings(p: &Presentation, t: &RackTable) -> Vec<Coloring> {
    let n = t.order();
    let sheets = &p.sheets;
    let kink = t.kink_map().expect("oracle expects a rack");
    let index = |id: &str| sheets.iter().position(|s| s == id).expect("declared sheet");

    let doubles: Vec<(usize, usize, usize)> = p
        .doubles
        .iter()
        .map(|d| (index(&d.under_from), index(&d.over), index(&d.under_to)))
        .collect();
    let curves: Vec<(usize, usize)> = p
        .curves
        .iter()
        .map(|c| (index(&c.from), index(&c.to)))
        .collect();
    let branches: Vec<usize> = p.branches.iter().map(|b| index(b)).collect();

    let mut values = vec![0usize; sheets.len()];
    let mut out = Vec::new();
    loop {
        let ok = doubles
            .iter()
            .all(|&(i, j, k)| t.op(values[i], values[j]) == values[k])
            && curves
                .iter()
                .all(|&(i, j)| kink.apply(values[i]) == values[j])
            && branches
                .iter()
                .all(|&i| t.op(values[i], values[i]) == values[i]);
        if ok {
            out.push(Coloring::from_pairs(
                sheets.iter().cloned().zip(values.iter().copied()),
            ));
        }
        let mut pos = sheets.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            values[pos] += 1;
            if values[pos] < n {
                break;
            }
            values[pos] = 0;
        }
    }
}

/// Scans all 3^9 order-3 operation tables and keeps those whose raw
/// entries satisfy Q2 (columns are permutations) and Q3
/// (self-distributivity), flagging Q1 (idempotence) as well. Returns the
/// surviving tables as flat row-major entry vectors plus the count of
/// quandles among them.
pub fn scan_order_3_tables() -> (Vec<Vec<usize>>, usize) {
    let mut racks = Vec::new();
    let mut quandles = 0;
    for code in 0..3usize.pow(9) {
        let mut entries = [0usize; 9];
        let mut rest = code;
        for e in entries.iter_mut() {
            *e = rest % 3;
            rest /= 3;
        }
        let op = |a: usize, b: usize| entries[a * 3 + b];

        let q2 = (0..3).all(|b| {
            let mut seen = [false; 3];
            (0..3).for_each(|a| seen[op(a, b)] = true);
            seen.iter().all(|&s| s)
        });
        let q3 = (0..3)
            .all(|a| (0..3).all(|b| (0..3).all(|c| op(op(a, b), c) == op(op(a, c), op(b, c)))));
        if !(q2 && q3) {
            continue;
        }
        if (0..3).all(|a| op(a, a) == a) {
            quandles += 1;
        }
        racks.push(entries.to_vec());
    }
    (racks, quandles)
}
