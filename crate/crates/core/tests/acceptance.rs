//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit status
//! if any criterion fails. Every comparison is exact; the bounds below are
//! the only parameters.

use std::process::ExitCode;
use std::time::Instant;

use num_integer::Integer;
use rhythmic::analysis::{
    build_dfa, convert, flip_check, sample_flip_pairs, verify_arc_identity,
    verify_christoffel_generation, verify_dfa_equivalence, verify_radix_order,
    verify_shift_invariance, verify_value_preservation, CheckReport, FlipOutcome,
};
use rhythmic::{
    christoffel_rhythm, evaluate, represent, Labelling, LabelledTree, RationalBase, Rhythm,
    RhythmicTree, Step, TreeMode,
};

/// Nodes, arcs and words checked per tree.
const N: u64 = 10_000;
/// Largest numerator in the sweeps over coprime pairs.
const P_MAX: u64 = 50;
/// Longest word in the exhaustive automaton comparison.
const DFA_MAX_LEN: usize = 12;
const FLIP_BOUND: u32 = 64;
const FLIP_PAIRS: usize = 200;
const FLIP_MAX_U: usize = 8;
const FLIP_MAX_V: usize = 4;
const FLIP_SEED: u64 = 2024;

const BASES: [(u64, u64); 5] = [(3, 2), (5, 3), (7, 4), (7, 3), (10, 3)];
const CORPUS: [&[u64]; 5] = [&[2, 2, 1], &[3, 0, 2], &[2, 2, 1, 2, 2, 1], &[2, 1, 3, 0, 0, 4], &[3, 1, 3, 3]];

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Outcome);

fn corpus() -> Vec<Rhythm> {
    CORPUS.iter().map(|c| Rhythm::new(c.to_vec()).unwrap()).collect()
}

fn coprime_pairs() -> impl Iterator<Item = (u64, u64)> {
    (2..=P_MAX).flat_map(|p| (1..p).filter(move |&q| p.gcd(&q) == 1).map(move |q| (p, q)))
}

fn from_report(report: CheckReport) -> Outcome {
    if report.passed() {
        Ok(report.to_string())
    } else {
        Err(report.to_string())
    }
}

fn christoffel_fixtures() -> Outcome {
    for (p, q, expected) in [(5, 3, vec![2, 2, 1]), (3, 2, vec![2, 1])] {
        let r = christoffel_rhythm(p, q).unwrap();
        if r.components() != expected.as_slice() {
            return Err(format!("christoffel_rhythm({p},{q}) = ({r})"));
        }
    }
    let mut points = 0u64;
    for (p, q) in coprime_pairs() {
        let path = christoffel_rhythm(p, q).unwrap().path_word();
        let mut lowest = vec![u64::MAX; q as usize + 1];
        let (mut x, mut y) = (0u64, 0u64);
        for step in path.steps() {
            match step {
                Step::X => x += 1,
                Step::Y => y += 1,
            }
            lowest[x as usize] = lowest[x as usize].min(y);
            if (x, y) != (q, p) {
                points += 1;
                // strictly above y = (p/q)x
                if q * y <= p * x {
                    return Err(format!("{p}/{q}: ({x},{y}) is not above the line"));
                }
            }
        }
        if (x, y) != (q, p) {
            return Err(format!("{p}/{q}: path ends at ({x},{y})"));
        }
        // no lattice point strictly between the line and the path
        for (x, &low) in lowest.iter().enumerate().take(q as usize).skip(1) {
            if q * (low - 1) > p * x as u64 {
                return Err(format!("{p}/{q}: ({x},{}) lies between line and path", low - 1));
            }
        }
    }
    Ok(format!("fixtures match, {points} path points above the line"))
}

fn example_labellings() -> Outcome {
    let cases: [(&[u64], &[i64]); 3] = [
        (&[3, 1, 3, 3], &[0, 2, 4, 1, -2, 0, 2, -1, 1, 3]),
        (&[3, 1], &[0, 1, 2, 1]),
        (&[3, 1, 1], &[0, 3, 6, 4, 2]),
    ];
    for (r, expected) in cases {
        let gamma = Labelling::special(&Rhythm::new(r.to_vec()).unwrap());
        if gamma.gamma() != expected {
            return Err(format!("{r:?} gives ({gamma})"));
        }
    }
    Ok("3 labellings match".into())
}

fn christoffel_generation() -> Outcome {
    let mut total = CheckReport::default();
    for (p, q) in BASES {
        total.merge(verify_christoffel_generation(p, q, N).unwrap());
    }
    from_report(total)
}

fn value_preservation() -> Outcome {
    let mut total = CheckReport::default();
    for r in corpus() {
        total.merge(verify_value_preservation(&r, N).unwrap());
    }
    from_report(total)
}

fn arc_identity() -> Outcome {
    let mut total = CheckReport::default();
    for r in corpus() {
        total.merge(verify_arc_identity(&r, N).unwrap());
    }
    from_report(total)
}

fn automaton() -> Outcome {
    let r = Rhythm::new(vec![3, 1]).unwrap();
    let tree_states = build_dfa(&r, TreeMode::Tree).unwrap().state_count();
    let itree_states = build_dfa(&r, TreeMode::ITree).unwrap().state_count();
    if (tree_states, itree_states) != (3, 2) {
        return Err(format!("{tree_states} states in tree mode, {itree_states} in i-tree mode"));
    }
    let report = verify_dfa_equivalence(&r, TreeMode::Tree, DFA_MAX_LEN).unwrap();
    let expected_words: u64 = (0..=DFA_MAX_LEN as u32).map(|l| 4u64.pow(l)).sum();
    if report.checked != expected_words {
        return Err(format!("{} words compared, expected {expected_words}", report.checked));
    }
    from_report(report).map(|s| format!("3 and 2 states; {s}"))
}

fn e_sequence_laws() -> Outcome {
    let mut pairs = 0;
    for (p, q) in coprime_pairs() {
        let r = christoffel_rhythm(p, q).unwrap();
        let e: Vec<i64> = r.e_sequence().values().to_vec();
        let rs: Vec<i64> = r.components().iter().map(|&c| c as i64).collect();
        let (p, q) = (p as i64, q as i64);
        let fail = |law: char, j: usize| Err(format!("{p}/{q}: law ({law}) fails at j={j}"));
        for j in 0..q as usize {
            if !(0..q).contains(&e[j]) {
                return fail('a', j);
            }
            let smallest = (0..).find(|&k| q * k + e[j] >= p).unwrap();
            if rs[j] != smallest {
                return fail('b', j);
            }
            if j + 1 < q as usize && e[j + 1] != e[j] + q * rs[j] - p {
                return fail('c', j);
            }
            if e[..j].contains(&e[j]) {
                return fail('d', j);
            }
            for i in 0..=j {
                let sum: i64 = rs[i..j].iter().sum();
                if q * sum + e[i] != (j - i) as i64 * p + e[j] {
                    return fail('e', j);
                }
            }
        }
        pairs += 1;
    }
    Ok(format!("{pairs} coprime pairs"))
}

fn growth() -> Outcome {
    let mut total = CheckReport::default();
    for r in corpus() {
        total.merge(verify_shift_invariance(&r, N).unwrap());
    }
    from_report(total)
}

fn flip_evidence() -> Outcome {
    let mut sampled = 0;
    for (p, q) in [(3, 2), (5, 3), (7, 4)] {
        let t = LabelledTree::rational_base(p, q, TreeMode::Tree).unwrap();
        for (u, v) in sample_flip_pairs(&t, FLIP_PAIRS, FLIP_MAX_U, FLIP_MAX_V, FLIP_SEED) {
            let report = flip_check(&t, &u, &v, FLIP_BOUND).unwrap();
            if !matches!(report.outcome, FlipOutcome::MaxIteration(_)) {
                return Err(format!("L_{p}/{q}: u={u} v={v} gives {:?}", report.outcome));
            }
            sampled += 1;
        }
    }
    let r = Rhythm::new(vec![3, 1]).unwrap();
    let (u, v) = build_dfa(&r, TreeMode::Tree).unwrap().find_cycle().unwrap();
    let k = LabelledTree::naive(r, TreeMode::Tree).unwrap();
    let outcome = flip_check(&k, &u, &v, FLIP_BOUND).unwrap().outcome;
    if outcome != FlipOutcome::BoundExceeded(FLIP_BOUND) {
        return Err(format!("K_(3,1): u={u} v={v} gives {outcome:?}"));
    }
    Ok(format!(
        "{sampled} pairs stop before {FLIP_BOUND}; K_(3,1) cycle u={u} v={v} exceeds it (bounded evidence only)"
    ))
}

fn radix_order() -> Outcome {
    let mut trees = Vec::new();
    for r in corpus() {
        trees.push(LabelledTree::special(r.clone(), TreeMode::Tree).unwrap());
        trees.push(LabelledTree::naive(r, TreeMode::Tree).unwrap());
    }
    for (p, q) in BASES {
        trees.push(LabelledTree::rational_base(p, q, TreeMode::Tree).unwrap());
    }
    let count = trees.len();
    let mut total = CheckReport::default();
    for t in &trees {
        let report = verify_radix_order(t, N as usize);
        // N words give N - 1 comparisons
        if report.checked != N - 1 {
            return Err(format!("only {} comparisons for ({})", report.checked, t.rhythm()));
        }
        total.merge(report);
    }
    from_report(total).map(|s| format!("{count} trees; {s}"))
}

/// `convert` against `represent` in a given base, for the special-labelled
/// tree of (3,1,1).
fn conversion_in(base: &RationalBase) -> Outcome {
    let r = Rhythm::new(vec![3, 1, 1]).unwrap();
    let t = LabelledTree::new(RhythmicTree::new(r.clone(), TreeMode::Tree).unwrap(), Labelling::special(&r)).unwrap();
    let mut report = CheckReport::default();
    let mut first = None;
    for n in 0..N {
        let w = t.repr_word(n);
        let converted = convert(&r, &w).unwrap();
        let expected = represent(base, n);
        let ok = converted == expected && evaluate(base, &converted).to_u64() == Some(n);
        report.checked += 1;
        if !ok {
            report.failures += 1;
            first.get_or_insert_with(|| format!("n={n}: convert({w}) = {converted}, represent({base}, {n}) = {expected}"));
        }
    }
    report.first_failure = first;
    from_report(report)
}

fn conversion_growth_five() -> Outcome {
    conversion_in(&RationalBase::integer(5).unwrap())
}

fn conversion_growth_five_thirds() -> Outcome {
    conversion_in(&RationalBase::new(5, 3).unwrap())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("1", "Christoffel fixtures and path above the slope line", christoffel_fixtures),
        ("2", "special labelling fixtures", example_labellings),
        ("3", "Christoffel trees generate base p/q representations", christoffel_generation),
        ("4", "special labellings preserve values", value_preservation),
        ("5", "arc identity a = q'm - p'n", arc_identity),
        ("6", "automaton of K_(3,1)", automaton),
        ("7", "e-sequence laws (a)-(e)", e_sequence_laws),
        ("8", "shift invariance and C(n+q) = C(n) + p", growth),
        ("9", "bounded iteration evidence", flip_evidence),
        ("10", "radix order of enumerations", radix_order),
        ("11", "conversion of (3,1,1) against base 5, as stated", conversion_growth_five),
        ("11'", "conversion of (3,1,1) against its growth 5/3", conversion_growth_five_thirds),
    ];
    let mut failed = Vec::new();
    for (id, name, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS [{id}] {name}: {detail} ({elapsed:.2}s)"),
            Err(detail) => {
                println!("FAIL [{id}] {name}: {detail} ({elapsed:.2}s)");
                failed.push(id);
            }
        }
    }
    if failed.is_empty() {
        println!("all {} criteria passed", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("{} of {} criteria failed: {}", failed.len(), criteria.len(), failed.join(", "));
        ExitCode::FAILURE
    }
}
