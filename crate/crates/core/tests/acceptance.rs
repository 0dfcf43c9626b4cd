//! Acceptance gate: one test that exercises every headline property of
//! the library end to end, printing a pass/fail line per criterion.
//!
//! Each criterion is run four times — in thread pools of 1, 2, 4 workers
//! and once more with 4 — and must stay within its time budget each run
//! and produce byte-identical reports across all runs (criterion 10).

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::panic;
use std::time::{Duration, Instant};

use rackle_core::{
    alexander_numbering, builtin_presentation, catalog, count_colorings, enumerate_colorings,
    enumerate_racks, phi, phi_inverse, pushoff, theorem2_report, verify_move, verify_witness,
    BijectionStatus, Family, Layer, NumberingOutcome, Presentation, RackTable,
    BUILTIN_PRESENTATIONS,
};

fn builtin(family: Family, n: usize) -> RackTable {
    RackTable::builtin(family, n).expect("builtin table")
}

fn corpus(name: &str) -> Presentation {
    builtin_presentation(name).expect("corpus entry")
}

/// Built-ins cyclic 2–8, dihedral 3–8, trivial 1–4 plus every enumerated
/// rack of order <= 4.
fn kink_rack_set() -> Vec<RackTable> {
    let mut set: Vec<RackTable> = (2..=8).map(|n| builtin(Family::Cyclic, n)).collect();
    set.extend((3..=8).map(|n| builtin(Family::Dihedral, n)));
    set.extend((1..=4).map(|n| builtin(Family::Trivial, n)));
    for n in 1..=4 {
        set.extend(enumerate_racks(n).expect("enumerable order"));
    }
    set
}

// criterion 1: the crossing-free torus takes n colorings over the cyclic
// rack of order n, the self-crossing torus none; the dihedral quandle of
// order 3 gives both diagrams 3.
fn criterion_1() -> String {
    let d1 = corpus("satoh_d1");
    let d2 = corpus("satoh_d2");
    let mut out = String::new();
    for n in 2..=8u64 {
        let t = builtin(Family::Cyclic, n as usize);
        let c1 = count_colorings(&d1, &t).expect("count");
        let c2 = count_colorings(&d2, &t).expect("count");
        assert_eq!(c1, n, "satoh_d1 over cyclic:{n}");
        assert_eq!(c2, 0, "satoh_d2 over cyclic:{n}");
        writeln!(out, "cyclic:{n}: satoh_d1={c1} satoh_d2={c2}").unwrap();
    }
    let r3 = builtin(Family::Dihedral, 3);
    let c1 = count_colorings(&d1, &r3).expect("count");
    let c2 = count_colorings(&d2, &r3).expect("count");
    assert_eq!(
        (c1, c2),
        (3, 3),
        "dihedral:3 must not separate the diagrams"
    );
    writeln!(out, "dihedral:3: satoh_d1={c1} satoh_d2={c2}").unwrap();
    out
}

// criterion 2: the kink map exists and satisfies its defining equation
// and the three laws on every rack in the test set.
fn criterion_2() -> String {
    let set = kink_rack_set();
    let mut max_order = 0;
    for t in &set {
        let report = t.verify_kink_properties().expect("rack has a kink map");
        assert!(
            report.all_hold(),
            "kink laws broken on order-{} table {:?}",
            t.order(),
            t.flat()
        );
        max_order = max_order.max(t.order());
    }
    format!(
        "kink laws hold on {} racks (orders up to {max_order})\n",
        set.len()
    )
}

// criterion 3: associated quandles are quandles; the cyclic rack's is the
// trivial quandle entrywise; quandles are their own associated quandle.
fn criterion_3() -> String {
    let set = kink_rack_set();
    let mut fixed_points = 0;
    for t in &set {
        let q = t
            .associated_quandle()
            .expect("rack has an associated quandle");
        assert!(
            q.check_axioms().is_quandle(),
            "assoc of {:?} is not a quandle",
            t.flat()
        );
        if t.is_quandle() {
            assert_eq!(q.to_text(), t.to_text(), "quandle not fixed by assoc");
            fixed_points += 1;
        }
    }
    for n in 2..=8 {
        let q = builtin(Family::Cyclic, n)
            .associated_quandle()
            .expect("assoc");
        assert_eq!(
            q.to_text(),
            builtin(Family::Trivial, n).to_text(),
            "assoc(cyclic:{n}) must be trivial:{n}"
        );
    }
    format!(
        "{} associated quandles pass the axioms; {fixed_points} quandles are fixed points\n",
        set.len()
    )
}

/// Deterministic presentation source for criterion 4: a fixed-constant
/// linear congruential walk, so every run generates the same sequence.
struct Lcg(u64);

impl Lcg {
    fn next(&mut self) -> usize {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (self.0 >> 33) as usize
    }

    fn below(&mut self, n: usize) -> usize {
        self.next() % n
    }
}

/// Plain branch-free presentations (<= 5 sheets, <= 4 double relations)
/// whose push-off numbering is consistent.
fn generated_presentations(count: usize) -> Vec<Presentation> {
    let mut lcg = Lcg(0x243F_6A88_85A3_08D3);
    let mut kept = Vec::new();
    let mut attempts = 0;
    while kept.len() < count {
        attempts += 1;
        assert!(
            attempts < 20_000,
            "generator starved at {} presentations",
            kept.len()
        );
        let sheet_count = 1 + lcg.below(5);
        let mut text = String::from("sheets");
        for i in 0..sheet_count {
            write!(text, " s{i}").unwrap();
        }
        text.push('\n');
        for _ in 0..lcg.below(5) {
            writeln!(
                text,
                "double s{} s{} s{}",
                lcg.below(sheet_count),
                lcg.below(sheet_count),
                lcg.below(sheet_count)
            )
            .unwrap();
        }
        let d = Presentation::parse(&text).expect("generated text is well-formed");
        let (overlay, _) = pushoff(&d).expect("plain and branch-free by construction");
        if alexander_numbering(&overlay)
            .expect("valid overlay")
            .is_consistent()
        {
            kept.push(d);
        }
    }
    kept
}

// criterion 4: on sphere_circle and 200 generated presentations with
// consistent push-off numbering, rack and associated-quandle counts agree
// and the pointwise bijection verifies, over four racks.
fn criterion_4() -> String {
    let mut presentations = vec![corpus("sphere_circle")];
    presentations.extend(generated_presentations(200));
    let racks = [
        builtin(Family::Cyclic, 3),
        builtin(Family::Cyclic, 4),
        builtin(Family::Cyclic, 5),
        builtin(Family::Dihedral, 3),
    ];
    let mut total = 0u64;
    for d in &presentations {
        for t in &racks {
            let report = theorem2_report(d, t).expect("pipeline runs");
            assert_eq!(
                report.quandle_count,
                report.rack_count,
                "counts differ on consistent-numbering input {:?}",
                d.to_text()
            );
            assert_eq!(
                report.status,
                BijectionStatus::VerifiedPointwise,
                "pointwise verification missing on {:?}",
                d.to_text()
            );
            total += report.rack_count;
        }
    }
    format!(
        "{} presentations x {} racks verified pointwise; {total} colorings per side\n",
        presentations.len(),
        racks.len()
    )
}

// criterion 5: the self-crossing torus push-off has no consistent
// numbering — witnessed by a verifiable closed walk — and the cyclic
// rack of order 3 separates the counts 0 vs 3 that a consistent
// numbering would force to agree.
fn criterion_5() -> String {
    let d2 = corpus("satoh_d2");
    let (overlay, _) = pushoff(&d2).expect("plain diagram");
    let outcome = alexander_numbering(&overlay).expect("valid overlay");
    let walk = match &outcome {
        NumberingOutcome::Inconsistent(walk) => walk,
        NumberingOutcome::Consistent(_) => panic!("satoh_d2 push-off must be inconsistent"),
    };
    assert!(
        verify_witness(&overlay, walk),
        "witness walk does not check out"
    );
    assert_ne!(walk.sum(), 0);

    let c3 = builtin(Family::Cyclic, 3);
    let rack_count = count_colorings(&d2, &c3).expect("count");
    let quandle_count =
        count_colorings(&d2, &c3.associated_quandle().expect("assoc")).expect("count");
    assert_eq!((rack_count, quandle_count), (0, 3));
    format!(
        "witness walk of {} step(s), sum {}; counts {rack_count} vs {quandle_count}\n",
        walk.steps.len(),
        walk.sum()
    )
}

// criterion 6: on every corpus overlay with consistent numbering, the
// transport's defining formula gives the same value at every
// representative of a target sheet, and transporting there and back is
// the identity on the full coloring set.
fn criterion_6() -> String {
    let mut racks: Vec<RackTable> = (2..=5).map(|n| builtin(Family::Cyclic, n)).collect();
    racks.extend((3..=5).map(|n| builtin(Family::Dihedral, n)));
    racks.extend((1..=4).map(|n| builtin(Family::Trivial, n)));
    for n in 1..=3 {
        racks.extend(enumerate_racks(n).expect("enumerable order"));
    }

    let mut overlays = Vec::new();
    for name in BUILTIN_PRESENTATIONS {
        let (overlay, _) = pushoff(&corpus(name)).expect("plain diagram");
        if let NumberingOutcome::Consistent(numbering) =
            alexander_numbering(&overlay).expect("valid overlay")
        {
            overlays.push((overlay, numbering));
        }
    }
    assert!(!overlays.is_empty());

    let mut transported = 0u64;
    for (overlay, numbering) in &overlays {
        let (source_side, source_map) = overlay.contract(Layer::Two);
        let (_, target_map) = overlay.contract(Layer::One);
        for t in &racks {
            let kink = t.kink_map().expect("rack");
            for c in enumerate_colorings(&source_side, t).expect("source colorings") {
                // Recompute the defining formula at every overlay sheet and
                // demand agreement within each target class.
                let mut by_class: BTreeMap<&str, usize> = BTreeMap::new();
                for y in &overlay.sheets {
                    let source_rep = source_map.get(y).expect("total contraction map");
                    let target_rep = target_map.get(y).expect("total contraction map");
                    let value = kink.power(
                        c.get(source_rep).expect("total coloring"),
                        numbering.get(y).expect("total numbering"),
                    );
                    if let Some(&previous) = by_class.get(target_rep) {
                        assert_eq!(
                            previous,
                            value,
                            "representatives of `{target_rep}` disagree on {}",
                            overlay.to_text()
                        );
                    } else {
                        by_class.insert(target_rep, value);
                    }
                }
                let image = phi(overlay, t, numbering, &c).expect("transport succeeds");
                for (sheet, value) in image.iter() {
                    assert_eq!(by_class.get(sheet), Some(&value));
                }
                let back = phi_inverse(overlay, t, numbering, &image).expect("inverse transport");
                assert_eq!(back, c, "round trip is not the identity");
                transported += 1;
            }
        }
    }
    format!(
        "{transported} colorings transported and returned across {} overlays\n",
        overlays.len()
    )
}

// criterion 7: every cataloged schema preserves extension counts over
// every boundary assignment, for the full rack test set.
fn criterion_7() -> String {
    let mut racks: Vec<RackTable> = (2..=6).map(|n| builtin(Family::Cyclic, n)).collect();
    racks.extend((3..=6).map(|n| builtin(Family::Dihedral, n)));
    racks.extend((1..=4).map(|n| builtin(Family::Trivial, n)));
    racks.extend(enumerate_racks(3).expect("enumerable order"));

    let mut out = String::new();
    for schema in catalog() {
        let mut classes = 0usize;
        for t in &racks {
            let report = verify_move(&schema, t).expect("verification runs");
            assert!(
                report.bijective,
                "{} not bijective over order-{} table {:?}",
                schema.name,
                t.order(),
                t.flat()
            );
            classes += report.fibers.len();
        }
        writeln!(
            out,
            "{}: bijective over {} racks ({classes} boundary classes)",
            schema.name,
            racks.len()
        )
        .unwrap();
    }
    out
}

// criterion 8: the solver's coloring list equals the naive full-scan
// filter, elementwise, on every corpus presentation and every rack of
// order <= 4.
fn criterion_8() -> String {
    let mut racks = Vec::new();
    for n in 1..=4 {
        racks.extend(enumerate_racks(n).expect("enumerable order"));
    }
    let mut compared = 0u64;
    for name in BUILTIN_PRESENTATIONS {
        let p = corpus(name);
        assert!(p.sheets.len() <= 5);
        for t in &racks {
            let solved = enumerate_colorings(&p, t).expect("solver runs");
            let scanned = common::brute_force_colorings(&p, t);
            assert_eq!(solved, scanned, "solver disagrees with scan on {name}");
            assert_eq!(count_colorings(&p, t).expect("count"), solved.len() as u64);
            compared += solved.len() as u64;
        }
    }
    format!(
        "solver matches the full scan on {} pairings ({compared} colorings)\n",
        3 * racks.len()
    )
}

// criterion 9: the enumerator agrees with the raw 3^9 scan, as sets, and
// on the quandle sub-count.
fn criterion_9() -> String {
    let enumerated = enumerate_racks(3).expect("enumerable order");
    let (scanned, scanned_quandles) = common::scan_order_3_tables();
    let enumerated_set: BTreeSet<Vec<usize>> =
        enumerated.iter().map(|t| t.flat().to_vec()).collect();
    let scanned_set: BTreeSet<Vec<usize>> = scanned.into_iter().collect();
    assert_eq!(enumerated_set, scanned_set, "enumerator and scan disagree");
    assert_eq!(
        enumerated.len(),
        enumerated_set.len(),
        "enumerator emitted duplicates"
    );
    let quandles = enumerated.iter().filter(|t| t.is_quandle()).count();
    assert_eq!(quandles, scanned_quandles);
    assert_eq!((enumerated.len(), quandles), (13, 5));
    format!(
        "enumerator and 3^9 scan agree: {} racks, {quandles} quandles\n",
        enumerated.len()
    )
}

struct Criterion {
    number: usize,
    name: &'static str,
    budget: Duration,
    run: fn() -> String,
}

const CRITERIA: [Criterion; 9] = [
    Criterion {
        number: 1,
        name: "satoh discrimination counts",
        budget: Duration::from_secs(1),
        run: criterion_1,
    },
    Criterion {
        number: 2,
        name: "kink map laws",
        budget: Duration::from_secs(10),
        run: criterion_2,
    },
    Criterion {
        number: 3,
        name: "associated quandle",
        budget: Duration::from_secs(10),
        run: criterion_3,
    },
    Criterion {
        number: 4,
        name: "count equality and pointwise bijection",
        budget: Duration::from_secs(60),
        run: criterion_4,
    },
    Criterion {
        number: 5,
        name: "numbering obstruction on the self-crossing torus",
        budget: Duration::from_secs(1),
        run: criterion_5,
    },
    Criterion {
        number: 6,
        name: "transport well-definedness and round trip",
        budget: Duration::from_secs(30),
        run: criterion_6,
    },
    Criterion {
        number: 7,
        name: "move invariance",
        budget: Duration::from_secs(60),
        run: criterion_7,
    },
    Criterion {
        number: 8,
        name: "solver matches the brute-force oracle",
        budget: Duration::from_secs(30),
        run: criterion_8,
    },
    Criterion {
        number: 9,
        name: "enumerator matches the brute-force scan",
        budget: Duration::from_secs(30),
        run: criterion_9,
    },
];

#[test]
fn acceptance() {
    let mut lines = Vec::new();
    let mut all_pass = true;
    let mut deterministic = true;
    for c in &CRITERIA {
        let outcome = panic::catch_unwind(|| {
            let mut reports = Vec::new();
            let mut slowest = Duration::ZERO;
            for &workers in &[1usize, 2, 4, 4] {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(workers)
                    .build()
                    .expect("worker pool");
                let start = Instant::now();
                let report = pool.install(c.run);
                let elapsed = start.elapsed();
                assert!(
                    elapsed <= c.budget,
                    "criterion {} took {elapsed:?}, budget {:?}",
                    c.number,
                    c.budget
                );
                slowest = slowest.max(elapsed);
                reports.push(report);
            }
            (reports, slowest)
        });
        match outcome {
            Ok((reports, slowest)) => {
                if !reports.windows(2).all(|w| w[0] == w[1]) {
                    deterministic = false;
                }
                lines.push(format!(
                    "criterion {}: {} ... pass ({:.2?} slowest of 4 runs, budget {:?})",
                    c.number, c.name, slowest, c.budget
                ));
            }
            Err(_) => {
                all_pass = false;
                deterministic = false;
                lines.push(format!("criterion {}: {} ... FAIL", c.number, c.name));
            }
        }
    }
    lines.push(format!(
        "criterion 10: determinism across runs and worker counts 1, 2, 4 ... {}",
        if deterministic { "pass" } else { "FAIL" }
    ));
    for line in &lines {
        println!("{line}");
    }
    assert!(
        all_pass && deterministic,
        "acceptance gate failed:\n{}",
        lines.join("\n")
    );
}
