//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use ordrev::decide::{decide, decide_nat, decide_well, detect_nonrev_clause, Clause};
use ordrev::dsl;
use ordrev::family::{Count, FamilyPresentation};
use ordrev::golden;
use ordrev::natrev::{
    decide_cardinal_reversible, decide_nat_reversible, semigroup_member, CardinalMultiset,
    CardinalValue, NatMultiset, NatProgression,
};
use ordrev::ordinal::Ordinal;
use ordrev::witness::coloring::{partition_limit, split_prefix, Coloring, Colors, PREFIX_A, PREFIX_B};
use ordrev::witness::oracle::{bounded_oracle_search, oracle_search_family, OracleBounds};
use ordrev::witness::verify::{verify_witness, WitnessInput, DEFAULT_DEPTH};
use rand::Rng;

const GOLDEN_LIMIT: Duration = Duration::from_secs(1);
const CROSS_CHECK_LIMIT: Duration = Duration::from_secs(60);
const SWEEP_LIMIT: Duration = Duration::from_secs(120);
const FOOTNOTE_GRID_MIN: usize = 50;
const SWEEP_BOUNDS: OracleBounds = OracleBounds {
    max_target: 30,
    max_coeff: 10,
};
const CORPUS_ORACLE_BOUNDS: OracleBounds = OracleBounds {
    max_target: 12,
    max_coeff: 4,
};
const SUBFAMILIES_PER_FAMILY: usize = 20;
const COLORING_SAMPLES: usize = 1_000;
const MIXED_CORPUS_SIZE: usize = 2_000;

type Outcome = Result<String, String>;

fn w() -> Ordinal {
    Ordinal::omega()
}

fn inf(values: &[u64]) -> Vec<(u64, Count)> {
    values.iter().map(|v| (*v, Count::Inf)).collect()
}

fn golden_verdicts() -> Outcome {
    let cases = [
        ("mixed tails", golden::MIXED_TAILS_TEXT, true, Clause::BoundedTail, Some(w())),
        ("points and w", golden::POINTS_AND_OMEGA_TEXT, false, Clause::RepeatedBelowLimit, None),
        ("two tails", golden::TWO_TAILS_TEXT, false, Clause::TailNotReversible, None),
    ];
    let mut slowest = Duration::ZERO;
    for (name, text, reversible, clause, gamma_star) in cases {
        let start = Instant::now();
        let family = dsl::parse(text).map_err(|e| format!("{name}: {e}"))?;
        let v = decide(&family).map_err(|e| format!("{name}: {e}"))?;
        if let Some(plan) = &v.witness {
            let normalized = family.normalize().expect("parsed families normalize");
            verify_witness(WitnessInput::Family(&normalized), plan, DEFAULT_DEPTH)
                .map_err(|r| format!("{name}: witness rejected: {r}"))?;
        }
        let elapsed = start.elapsed();
        slowest = slowest.max(elapsed);
        if v.reversible != reversible || v.clause != clause {
            return Err(format!("{name}: got {} clause {}", v.reversible, v.clause));
        }
        if gamma_star.is_some() && v.gamma_star != gamma_star {
            return Err(format!("{name}: gamma* {:?}", v.gamma_star));
        }
        if v.reversible == v.witness.is_some() {
            return Err(format!("{name}: witness presence does not match the verdict"));
        }
        if elapsed > GOLDEN_LIMIT {
            return Err(format!("{name}: took {elapsed:?}"));
        }
    }
    Ok(format!("mixed tails II at w, points and w A, two tails B; slowest {slowest:?}"))
}

/// Whether some progression has infinitely many even members, read off the
/// parity of its first two members.
fn has_infinitely_many_evens(ps: &[NatProgression]) -> bool {
    ps.iter().any(|p| p.member(0) % 2 == 0 || p.member(1) % 2 == 0)
}

fn small_generator_grid() -> Outcome {
    let mut grid: Vec<(String, NatMultiset, bool)> = Vec::new();
    let progressions: Vec<NatProgression> = (1..=4)
        .flat_map(|a| (1..=3).map(move |d| NatProgression::new(a, d, 1)))
        .collect();
    let extras: [&[(u64, Count)]; 3] = [&[], &[(3, Count::Fin(2))], &[(7, Count::Fin(1)), (8, Count::Fin(5))]];

    for extra in extras {
        let m = NatMultiset::new(extra.to_vec(), vec![]).unwrap();
        grid.push((format!("K=0 {extra:?}"), m, true));
        for p in &progressions {
            let m = NatMultiset::new(extra.to_vec(), vec![*p]).unwrap();
            grid.push((format!("K=0 {extra:?} {p:?}"), m, true));
        }
    }
    for extra in extras {
        let mut singles = inf(&[2, 5]);
        singles.extend_from_slice(extra);
        grid.push((format!("K=2,5 {extra:?}"), NatMultiset::new(singles.clone(), vec![]).unwrap(), true));
        for p in &progressions {
            let m = NatMultiset::new(singles.clone(), vec![*p]).unwrap();
            grid.push((format!("K=2,5 {extra:?} {p:?}"), m, false));
        }
    }
    let mut pairs: Vec<Vec<NatProgression>> = vec![vec![]];
    pairs.extend(progressions.iter().map(|p| vec![*p]));
    for p in &progressions {
        for q in &progressions {
            if p.d == 2 && q.d == 2 && p < q {
                pairs.push(vec![*p, *q]);
            }
        }
    }
    for ps in pairs {
        let expected = !has_infinitely_many_evens(&ps);
        let m = NatMultiset::new(inf(&[4, 10]), ps.clone()).unwrap();
        grid.push((format!("K=4,10 {ps:?}"), m, expected));
    }

    if grid.len() < FOOTNOTE_GRID_MIN {
        return Err(format!("grid has only {} multisets", grid.len()));
    }
    for (name, m, expected) in &grid {
        let v = decide_nat(m);
        if v.reversible != *expected {
            return Err(format!("{name}: decided {}", v.reversible));
        }
        if let Some(plan) = &v.witness {
            verify_witness(WitnessInput::Nat(m), plan, DEFAULT_DEPTH)
                .map_err(|r| format!("{name}: witness rejected: {r}"))?;
        } else if !v.reversible {
            return Err(format!("{name}: no witness"));
        }
    }
    Ok(format!("{} multisets", grid.len()))
}

fn characterization_agreement(corpus: &[(FamilyPresentation, ordrev::Orientation)]) -> Outcome {
    let start = Instant::now();
    let mut reversible = 0;
    for (i, (f, o)) in corpus.iter().enumerate() {
        let v = decide_well(f, *o).map_err(|e| format!("family {i}: {e}"))?;
        let neg = detect_nonrev_clause(f, *o).map_err(|e| format!("family {i}: {e}"))?;
        if v.reversible != neg.is_none() {
            return Err(format!("family {i} disagrees: {}", dsl::print(f)));
        }
        let exclusive = match v.clause {
            Clause::FiniteToOne => f.finite_to_one(),
            Clause::BoundedTail => !f.finite_to_one(),
            _ => true,
        };
        if !exclusive {
            return Err(format!("family {i}: clause {} overlaps", v.clause));
        }
        reversible += v.reversible as usize;
    }
    let elapsed = start.elapsed();
    if elapsed > CROSS_CHECK_LIMIT {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!(
        "{} families ({reversible} reversible), 0 disagreements, {elapsed:?}",
        corpus.len()
    ))
}

fn witness_soundness_completeness(
    corpus: &[(FamilyPresentation, ordrev::Orientation)],
    mixed: &[FamilyPresentation],
) -> Outcome {
    let mut built = 0;
    let mut found = 0;
    for (i, f) in corpus.iter().map(|(f, _)| f).chain(mixed).enumerate() {
        let v = decide(f).map_err(|e| format!("family {i}: {e}"))?;
        if !v.reversible {
            let plan = v.witness.as_ref().ok_or_else(|| format!("family {i}: no witness"))?;
            verify_witness(WitnessInput::Family(f), plan, DEFAULT_DEPTH)
                .map_err(|r| format!("family {i}: witness rejected: {r}\n{}", dsl::print(f)))?;
            built += 1;
        }
        if let Some(plan) = oracle_search_family(f, CORPUS_ORACLE_BOUNDS) {
            if v.reversible {
                return Err(format!("family {i}: oracle found {plan:?} for a reversible family"));
            }
            found += 1;
        }
    }
    Ok(format!("{built} built witnesses verified, {found} oracle witnesses, all on non-reversible families"))
}

fn oracle_sweep() -> Outcome {
    let start = Instant::now();
    let values: Vec<u64> = (1..=10).collect();
    let mut ks: Vec<Vec<u64>> = vec![vec![]];
    for (i, &a) in values.iter().enumerate() {
        ks.push(vec![a]);
        for (j, &b) in values.iter().enumerate().skip(i + 1) {
            ks.push(vec![a, b]);
            for &c in values.iter().skip(j + 1) {
                ks.push(vec![a, b, c]);
            }
        }
    }
    let mut progressions: Vec<Option<NatProgression>> = vec![None];
    for a in 1..=6 {
        for d in 1..=6 {
            progressions.push(Some(NatProgression::new(a, d, 1)));
        }
    }
    let mut checked = 0;
    let mut non_reversible = 0;
    for k in &ks {
        for p in &progressions {
            let m = NatMultiset::new(inf(k), p.iter().copied().collect()).unwrap();
            let reversible = decide_nat_reversible(&m).reversible;
            let plan = bounded_oracle_search(&m, SWEEP_BOUNDS);
            if plan.is_some() == reversible {
                return Err(format!("K = {k:?}, progression {p:?}: oracle {plan:?}, reversible {reversible}"));
            }
            checked += 1;
            non_reversible += !reversible as usize;
        }
    }
    let elapsed = start.elapsed();
    if elapsed > SWEEP_LIMIT {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("{checked} multisets ({non_reversible} non-reversible), {elapsed:?}"))
}

/// Every nonempty sum of at most `n / min` generators, by enumeration.
fn reachable_by_enumeration(n: u64, gens: &[u64]) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    let Some(&min) = gens.iter().min() else {
        return out;
    };
    let mut frontier = vec![0u64];
    for _ in 0..n / min {
        let mut next = Vec::new();
        for s in &frontier {
            for g in gens {
                let t = s + g;
                if t <= n && out.insert(t) {
                    next.push(t);
                }
            }
        }
        frontier = next;
    }
    out
}

fn semigroup_brute_force() -> Outcome {
    let mut sets: Vec<Vec<u64>> = vec![vec![]];
    for a in 1..=20u64 {
        sets.push(vec![a]);
        for b in a + 1..=20 {
            sets.push(vec![a, b]);
            for c in b + 1..=20 {
                sets.push(vec![a, b, c]);
            }
        }
    }
    let mut checks = 0;
    for gens in &sets {
        let reachable = reachable_by_enumeration(60, gens);
        for n in 1..=60 {
            let cert = semigroup_member(n, gens);
            if cert.is_some() != reachable.contains(&n) {
                return Err(format!("n = {n}, gens = {gens:?}: {cert:?}"));
            }
            if let Some(c) = cert {
                if c.target != n || c.sum() != Some(n) || !c.is_valid_over(gens) {
                    return Err(format!("n = {n}, gens = {gens:?}: bad certificate {c:?}"));
                }
            }
            checks += 1;
        }
    }
    Ok(format!("{checks} (n, generator set) pairs over {} sets", sets.len()))
}

fn subfamily_closure(corpus: &[(FamilyPresentation, ordrev::Orientation)], mixed: &[FamilyPresentation]) -> Outcome {
    let mut rng = common::rng(7);
    let mut families = 0;
    for (i, f) in corpus.iter().map(|(f, _)| f).chain(mixed).enumerate() {
        if !decide(f).map_err(|e| e.to_string())?.reversible {
            continue;
        }
        families += 1;
        for _ in 0..SUBFAMILIES_PER_FAMILY {
            let sub = common::random_subfamily(&mut rng, f);
            if !decide(&sub).map_err(|e| e.to_string())?.reversible {
                return Err(format!(
                    "family {i}:\n{}has non-reversible subfamily:\n{}",
                    dsl::print(f),
                    dsl::print(&sub)
                ));
            }
        }
    }
    Ok(format!("{families} reversible families x {SUBFAMILIES_PER_FAMILY} subfamilies"))
}

/// A uniformly structured random element below `bound` (finite exponents).
fn sample_below(rng: &mut impl Rng, bound: &Ordinal) -> Ordinal {
    let terms = bound.terms();
    let i = rng.gen_range(0..terms.len());
    let (e, c) = &terms[i];
    let mut out: Vec<(Ordinal, u64)> = terms[..i].to_vec();
    let lead = rng.gen_range(0..*c);
    if lead > 0 {
        out.push((e.clone(), lead));
    }
    let top = e.as_nat().expect("finite exponents");
    for exp in (0..top).rev() {
        let k = if exp == 0 { rng.gen_range(0..=60) } else { rng.gen_range(0..=4) };
        if k > 0 {
            out.push((Ordinal::nat(exp), k));
        }
    }
    Ordinal::from_terms(out).expect("decreasing exponents")
}

fn check_coloring(c: &Coloring, colors: &[u64], rng: &mut impl Rng) -> Result<(), String> {
    let gamma = c.gamma().clone();
    let mut pairs = 0;
    let mut attempts = 0;
    while pairs < COLORING_SAMPLES {
        attempts += 1;
        if attempts > 200 * COLORING_SAMPLES {
            return Err(format!("could not sample same-color pairs below {gamma}"));
        }
        let x = sample_below(rng, &gamma);
        let y = sample_below(rng, &gamma);
        if x == y {
            continue;
        }
        let (x, y) = if x < y { (x, y) } else { (y, x) };
        let (cx, rx) = c.rank(&x).map_err(|e| e.to_string())?;
        let (cy, ry) = c.rank(&y).map_err(|e| e.to_string())?;
        if cx != cy {
            continue;
        }
        if rx >= ry {
            return Err(format!("{x} < {y} but ranks {rx} >= {ry}"));
        }
        pairs += 1;
    }
    for _ in 0..COLORING_SAMPLES {
        let x = sample_below(rng, &gamma);
        let (color, r) = c.rank(&x).map_err(|e| e.to_string())?;
        if c.unrank(color, &r).map_err(|e| e.to_string())? != x {
            return Err(format!("unrank(rank({x})) differs"));
        }
        let color = colors[rng.gen_range(0..colors.len())];
        let ty = c.class_type(color).map_err(|e| e.to_string())?;
        if ty.is_zero() {
            continue;
        }
        let y = sample_below(rng, &ty);
        let x = c.unrank(color, &y).map_err(|e| e.to_string())?;
        if x >= gamma || c.rank(&x).map_err(|e| e.to_string())? != (color, y.clone()) {
            return Err(format!("rank(unrank({color}, {y})) differs"));
        }
    }
    Ok(())
}

fn coloring_checks() -> Outcome {
    let mut rng = common::rng(8);
    let w2 = Ordinal::omega_pow(Ordinal::nat(2));
    let gammas = [w(), Ordinal::monomial(Ordinal::nat(1), 2), w2.clone(), w2.add(&Ordinal::monomial(Ordinal::nat(1), 3))];
    let mut checked = 0;
    for gamma in &gammas {
        for (colors, palette) in [
            (Colors::Finite(2), vec![0, 1]),
            (Colors::Finite(3), vec![0, 1, 2]),
            (Colors::Omega, vec![0, 1, 2, 5, 17]),
        ] {
            let c = partition_limit(gamma, colors).map_err(|e| e.to_string())?;
            for color in &palette {
                if c.class_type(*color).map_err(|e| e.to_string())? != *gamma {
                    return Err(format!("class {color} of {gamma} split {colors:?} is not a copy of {gamma}"));
                }
            }
            check_coloring(&c, &palette, &mut rng).map_err(|e| format!("{gamma} / {colors:?}: {e}"))?;
            checked += 1;
        }
        for alpha in [Ordinal::nat(3), w(), w().plus_nat(1), gamma.clone()] {
            if alpha > *gamma {
                if split_prefix(gamma, &alpha).is_ok() {
                    return Err(format!("split_prefix({gamma}, {alpha}) accepted alpha > gamma"));
                }
                continue;
            }
            let c = split_prefix(gamma, &alpha).map_err(|e| e.to_string())?;
            if c.class_type(PREFIX_A).map_err(|e| e.to_string())? != alpha
                || c.class_type(PREFIX_B).map_err(|e| e.to_string())? != *gamma
            {
                return Err(format!("split_prefix({gamma}, {alpha}) has wrong class types"));
            }
            check_coloring(&c, &[PREFIX_A, PREFIX_B], &mut rng)
                .map_err(|e| format!("split_prefix({gamma}, {alpha}): {e}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} colorings x {COLORING_SAMPLES} samples"))
}

fn cardinal_sequences(corpus: &[(FamilyPresentation, ordrev::Orientation)], mixed: &[FamilyPresentation]) -> Outcome {
    let family = dsl::parse(golden::OMEGA_PLUS_N_TEXT).map_err(|e| e.to_string())?;
    let v = decide(&family).map_err(|e| e.to_string())?;
    if !v.reversible {
        return Err("<w + n> decided non-reversible".into());
    }
    let cardinals = CardinalMultiset::from_singles(vec![(CardinalValue::Aleph(0), Count::Inf)]);
    let cv = decide_cardinal_reversible(&cardinals).map_err(|e| e.to_string())?;
    if cv.reversible {
        return Err("<w : n in w> decided reversible as a cardinal sequence".into());
    }
    if common::cardinal_sequence(&family) != cardinals {
        return Err("cardinalities of <w + n> are not <w : n in w>".into());
    }

    let mut premise = 0;
    for (i, f) in corpus.iter().map(|(f, _)| f).chain(mixed).enumerate() {
        let cv = decide_cardinal_reversible(&common::cardinal_sequence(f)).map_err(|e| e.to_string())?;
        if cv.reversible {
            premise += 1;
            if !decide(f).map_err(|e| e.to_string())?.reversible {
                return Err(format!("family {i}: cardinals reversible but family is not\n{}", dsl::print(f)));
            }
        }
    }
    Ok(format!("<w + n> reversible, <w> not; {premise} corpus families with reversible cardinalities, 0 violations"))
}

fn main() -> ExitCode {
    let corpus = common::corpus();
    let mixed = common::mixed_corpus(MIXED_CORPUS_SIZE);
    type Check<'a> = (&'a str, Box<dyn Fn() -> Outcome + 'a>);
    let checks: Vec<Check> = vec![
        ("golden verdicts", Box::new(golden_verdicts)),
        ("small generator grid", Box::new(small_generator_grid)),
        ("characterization agreement", Box::new(|| characterization_agreement(&corpus))),
        ("witness completeness and soundness", Box::new(|| witness_soundness_completeness(&corpus, &mixed))),
        ("bounded oracle sweep", Box::new(oracle_sweep)),
        ("semigroup membership vs enumeration", Box::new(semigroup_brute_force)),
        ("subfamily closure", Box::new(|| subfamily_closure(&corpus, &mixed))),
        ("coloring checks", Box::new(coloring_checks)),
        ("cardinal and ordinal sequences", Box::new(|| cardinal_sequences(&corpus, &mixed))),
    ];
    let mut failed = 0;
    for (n, (name, check)) in checks.iter().enumerate() {
        let start = Instant::now();
        match check() {
            Ok(summary) => println!("PASS [{}] {name}: {summary} ({:.1?})", n + 1, start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL [{}] {name}: {why}", n + 1);
            }
        }
    }
    println!("{} of {} criteria passed", checks.len() - failed, checks.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
