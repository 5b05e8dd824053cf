//! The acceptance suites: exhaustive finite checks against independent
//! oracles, plus the fixed tables for cardinals, templates and patterns.
//! Every suite is deterministic (fixed seeds, fixed enumeration order).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Pow, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cardinal::{compare, stability_predicate, CardinalExpr, TriBool};
use crate::chain::{consecutive_indices, evaluate_chain, expected_index, stabilization_index, witness_b_elements, witness_chain};
use crate::error::{Error, Result};
use crate::formula::{scalar_formula, sum_formulas, PpFormula};
use crate::group::{groups_up_to_order, CyclicSum, Element, FgGroup};
use crate::oracle::{
    all_subgroup_bitmaps, bitmap_of, brute_force_evaluate, complement_exists, is_pure_by_sets, lowness_by_search,
    types_equivalent, PointedExtension, Table,
};
use crate::ppsolve::{evaluate, index, pp_type_descriptor, pp_type_equal, ParameterEmbedding, PpTypeDescriptor};
use crate::purity::{complement, in_torsion_of_pe, is_pure, torsion_radical, OrderPattern};
use crate::subgroup::{all_subgroups, quotient, Homomorphism, Subgroup};
use crate::symbolic::{limit_model_template, CofinalityClass, SymbolicGroup, Variant};
use crate::ulm::{reconstruct, ulm_invariants};

/// Suite names in criterion order.
pub const SUITES: [&str; 10] = [
    "evaluation",
    "complement",
    "radical",
    "low-closure",
    "witness-chain",
    "pp-types",
    "ulm",
    "stability",
    "limit-models",
    "order-patterns",
];

const MAX_REPORTED_FAILURES: usize = 5;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SuiteReport {
    pub criterion: usize,
    pub name: &'static str,
    pub checks: usize,
    pub failures: Vec<String>,
    pub failure_count: usize,
    pub summary: String,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:>2} {}: {} ({} checks, {} failures)",
            if self.passed() { "PASS" } else { "FAIL" },
            self.criterion,
            self.name,
            self.summary,
            self.checks,
            self.failure_count
        )?;
        for w in &self.failures {
            write!(f, "\n    {w}")?;
        }
        Ok(())
    }
}

/// Counts checks and keeps the first few failure descriptions.
struct Tally {
    checks: usize,
    failures: Vec<String>,
    failure_count: usize,
}

impl Tally {
    fn new() -> Tally {
        Tally {
            checks: 0,
            failures: Vec::new(),
            failure_count: 0,
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failure_count += 1;
            if self.failures.len() < MAX_REPORTED_FAILURES {
                self.failures.push(describe());
            }
        }
    }

    fn report(self, criterion: usize, summary: String) -> SuiteReport {
        SuiteReport {
            criterion,
            name: SUITES[criterion - 1],
            checks: self.checks,
            failures: self.failures,
            failure_count: self.failure_count,
            summary,
        }
    }
}

/// Runs one suite by name, or all ten for `"all"`.
pub fn run_suite(name: &str) -> Result<Vec<SuiteReport>> {
    if name == "all" {
        return (1..=SUITES.len()).map(run_criterion).collect();
    }
    let pos = SUITES
        .iter()
        .position(|s| *s == name)
        .ok_or_else(|| Error::UnknownSuite(name.to_string()))?;
    Ok(vec![run_criterion(pos + 1)?])
}

pub fn run_criterion(criterion: usize) -> Result<SuiteReport> {
    match criterion {
        1 => evaluation_suite(),
        2 => complement_suite(),
        3 => radical_suite(),
        4 => low_closure_suite(),
        5 => witness_chain_suite(),
        6 => pp_type_suite(),
        7 => ulm_suite(),
        8 => stability_suite(),
        9 => limit_model_suite(),
        10 => order_pattern_suite(),
        n => Err(Error::UnknownSuite(n.to_string())),
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn coefficient<R: Rng>(rng: &mut R) -> i64 {
    if rng.gen_bool(0.15) {
        *[6, 8, 9, 12, 16, -8, -27].choose(rng).unwrap()
    } else {
        rng.gen_range(-4..=4)
    }
}

/// A random pp-formula with `arity` free variables, up to `max_bound`
/// quantified variables and `1..=max_eqs` equations.
pub fn random_formula<R: Rng>(rng: &mut R, arity: usize, max_bound: usize, max_eqs: usize) -> PpFormula {
    let bound = rng.gen_range(0..=max_bound);
    let eqs = rng.gen_range(1..=max_eqs);
    let free = (1..=arity).map(|i| format!("x{i}")).collect();
    let bound_vars = (1..=bound).map(|i| format!("y{i}")).collect();
    let equations = (0..eqs)
        .map(|_| (0..arity + bound).map(|_| BigInt::from(coefficient(rng))).collect())
        .collect();
    PpFormula::new(free, bound_vars, equations).expect("distinct names, consistent widths")
}

/// A random finitely generated group with up to three cyclic coordinates.
pub fn random_fg_group<R: Rng>(rng: &mut R) -> CyclicSum {
    let k = rng.gen_range(1..=3);
    let moduli = (0..k)
        .map(|_| BigInt::from(*[0, 0, 2, 3, 4, 5, 6, 8, 9, 12].choose(rng).unwrap()))
        .collect();
    CyclicSum::new(moduli)
}

fn random_element_of<R: Rng>(rng: &mut R, h: &Subgroup) -> Element {
    let m = h.ambient();
    let mut acc = m.zero();
    for g in h.generators() {
        let c = BigInt::from(rng.gen_range(-6..=6));
        acc = m.add(&acc, &m.scale(&c, &g));
    }
    acc
}

/// A random homomorphism `M → N`: each generator of order `d` goes to a
/// random element of `N[d]` (anywhere in `N` when `d = 0`).
pub fn random_homomorphism<R: Rng>(rng: &mut R, m: &CyclicSum, n: &CyclicSum) -> Homomorphism {
    let whole = Subgroup::whole(n);
    let images = m
        .moduli()
        .iter()
        .map(|d| {
            let target = if d.is_zero() { whole.clone() } else { whole.n_torsion(d) };
            random_element_of(rng, &target)
        })
        .collect();
    Homomorphism::new(m, n, images).expect("images respect the relations")
}

fn fmt_bitmap(bm: &[bool]) -> String {
    bm.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i.to_string()).collect::<Vec<_>>().join(",")
}

const EVALUATION_FORMULAS: usize = 500;

fn evaluation_suite() -> Result<SuiteReport> {
    let mut r = rng(1);
    let formulas: Vec<PpFormula> = (0..EVALUATION_FORMULAS)
        .map(|i| random_formula(&mut r, if i % 5 == 4 { 2 } else { 1 }, 2, 2))
        .collect();
    let groups = groups_up_to_order(64);
    let mut t = Tally::new();
    for g in &groups {
        let m = g.cyclic_sum();
        let table = Table::of(&m).expect("small finite group");
        for f in &formulas {
            let h = evaluate(f, &m);
            let oracle = brute_force_evaluate(f, &table);
            let got = bitmap_of(&Table::of(h.ambient()).expect("small"), &h.generators());
            t.check(got == oracle, || {
                format!("{f} on {g}: solver {{{}}} vs enumeration {{{}}}", fmt_bitmap(&got), fmt_bitmap(&oracle))
            });
        }
    }
    let summary = format!("{} formulas × {} groups of order ≤ 64", formulas.len(), groups.len());
    Ok(t.report(1, summary))
}

fn complement_suite() -> Result<SuiteReport> {
    let mut t = Tally::new();
    let mut pairs = 0;
    let groups = groups_up_to_order(32);
    for g in &groups {
        let m = g.cyclic_sum();
        let table = Table::of(&m).expect("small");
        let bitmaps = all_subgroup_bitmaps(&table);
        for h in all_subgroups(&m)? {
            pairs += 1;
            let pure = is_pure(&h)?;
            let comp = complement(&h)?;
            let bm = bitmap_of(&table, &h.generators());
            t.check(comp.is_some() == pure, || {
                format!("{h} in {g}: complement {} but pure = {pure}", comp.is_some())
            });
            t.check(pure == is_pure_by_sets(&table, &bm), || format!("{h} in {g}: purity disagrees with set check"));
            t.check(comp.is_some() == complement_exists(&table, &bm, &bitmaps), || {
                format!("{h} in {g}: complement disagrees with subgroup scan")
            });
            if let Some(k) = comp {
                let ok = h.intersect(&k)?.is_trivial() && h.sum(&k)?.is_whole();
                t.check(ok, || format!("{k} is not a complement of {h} in {g}"));
            }
        }
    }
    Ok(t.report(2, format!("{pairs} subgroups of {} groups of order ≤ 32", groups.len())))
}

const RANDOM_CASES: usize = 200;

fn radical_suite() -> Result<SuiteReport> {
    let mut r = rng(3);
    let mut t = Tally::new();
    for _ in 0..RANDOM_CASES {
        let m = random_fg_group(&mut r);
        let n = random_fg_group(&mut r);
        let f = random_homomorphism(&mut r, &m, &n);
        let image = f.image(&torsion_radical(&m))?;
        t.check(image.is_subgroup_of(&torsion_radical(&n))?, || {
            format!("f: {m} → {n} maps t(M) outside t(N)")
        });
    }
    for _ in 0..RANDOM_CASES {
        let m = random_fg_group(&mut r);
        let tm = torsion_radical(&m);
        let q = quotient(&tm).cyclic_sum();
        t.check(torsion_radical(&q).is_trivial(), || format!("t(M/t(M)) ≠ 0 for M = {m}"));
        let (structure, _) = tm.structure();
        let inner = structure.cyclic_sum();
        t.check(torsion_radical(&inner).is_whole(), || format!("t(t(M)) ≠ t(M) for M = {m}"));
        t.check(is_pure(&tm)?, || format!("t(M) not pure in M = {m}"));
    }
    Ok(t.report(3, format!("{RANDOM_CASES} random homomorphisms and {RANDOM_CASES} random groups")))
}

const LOW_PAIRS: usize = 500;

fn random_low_formula<R: Rng>(rng: &mut R) -> Result<PpFormula> {
    loop {
        let f = random_formula(rng, 1, 2, 3);
        if f.is_low()? {
            return Ok(f);
        }
    }
}

fn low_closure_suite() -> Result<SuiteReport> {
    let mut r = rng(4);
    let mut t = Tally::new();
    for _ in 0..LOW_PAIRS {
        let f1 = random_low_formula(&mut r)?;
        let f2 = random_low_formula(&mut r)?;
        let s = sum_formulas(&f1, &f2)?;
        let k = BigInt::from(r.gen_range(-6..=6));
        let c = scalar_formula(&k, &f1)?;
        for (what, g) in [("sum", &s), ("scalar", &c)] {
            let low = g.is_low()?;
            t.check(low, || format!("{what} of low formulas is not low: {g}"));
            let by_search = lowness_by_search(g) == Some(BigInt::zero());
            t.check(low == by_search, || format!("lowness of {g} disagrees with bounded search"));
        }
    }
    Ok(t.report(4, format!("{LOW_PAIRS} random pairs of low formulas")))
}

fn witness_chain_suite() -> Result<SuiteReport> {
    let mut t = Tally::new();
    let mut cases = 0;
    for p in [2u64, 3] {
        for m0 in 1..=8u32 {
            for k in 1..=3usize {
                cases += 1;
                let (chain, b) = witness_chain(p, m0, k)?;
                t.check(chain.low_head(), || "φ0 is not low".into());
                let ev = evaluate_chain(&chain, &b, m0 as u64 + 1)?;
                let tag = format!("p={p} M0={m0} k={k}");
                t.check(ev.is_descending(), || format!("{tag}: chain not descending"));
                let indices = consecutive_indices(&ev.levels)?;
                let want = expected_index(p, k);
                for (n, got) in indices.iter().take(m0 as usize).cloned().enumerate() {
                    t.check(got.as_ref() == Some(&want) && want >= BigInt::from(2), || {
                        format!("{tag}: index at n={n} is {got:?}, expected {want}")
                    });
                    let direct = index(&chain.at(n as u64)?, &chain.at(n as u64 + 1)?, &b)?;
                    t.check(direct == got, || format!("{tag}: ppsolve index differs at n={n}"));
                }
                let stab = stabilization_index(&chain, &b, m0 as u64 + 1)?;
                t.check(stab == Some(m0 as u64), || format!("{tag}: stabilizes at {stab:?}"));
                let size = ev.levels[0].order().expect("finite");
                let want_size = BigInt::from(p).pow(k as u32 * m0);
                t.check(size == want_size, || format!("{tag}: |φ0[B]| = {size}"));
            }
        }
        for m0 in 1..=8u32 {
            cases += 1;
            t.check(witness_b_elements(p, m0).is_ok(), || format!("p={p} M0={m0}: no witness elements"));
        }
    }
    Ok(t.report(5, format!("{cases} (p, M0, k) configurations")))
}

const TYPE_BOUND: u64 = 16;

struct Realization {
    descriptor: PpTypeDescriptor,
    pointed: PointedExtension,
    label: String,
}

fn realization(emb: &ParameterEmbedding, a: &Element, n_name: &FgGroup) -> Result<Realization> {
    let table = Table::of(emb.target()).expect("small");
    let coords = |e: &Element| -> Vec<u64> { table.decode(table.from_element(e)) };
    Ok(Realization {
        descriptor: pp_type_descriptor(emb, a)?,
        pointed: PointedExtension {
            parameter_images: emb.map().images().iter().map(coords).collect(),
            element: coords(a),
            table: table.clone(),
        },
        label: format!("{a} in {n_name} over {}", emb.parameters()),
    })
}

/// Both relations are equivalences, so agreement is checked on a class
/// partition: members agree with their representative under both, and
/// distinct representatives are separated by both.
fn pp_type_suite() -> Result<SuiteReport> {
    let mut t = Tally::new();
    let mut by_params: BTreeMap<String, Vec<Realization>> = BTreeMap::new();
    let mut triples = 0;
    for g in groups_up_to_order(TYPE_BOUND) {
        let n = g.cyclic_sum();
        for h in all_subgroups(&n)? {
            if !is_pure(&h)? {
                continue;
            }
            let emb = ParameterEmbedding::from_subgroup(&h)?;
            let key = emb.parameters().to_string();
            for a in n.elements()? {
                triples += 1;
                by_params.entry(key.clone()).or_default().push(realization(&emb, &a, &g)?);
            }
        }
    }
    let mut classes_total = 0;
    for (params, items) in &by_params {
        let mut reps: Vec<usize> = Vec::new();
        for (i, x) in items.iter().enumerate() {
            let mut placed = false;
            for &j in &reps {
                if pp_type_equal(&items[j].descriptor, &x.descriptor)? {
                    let oracle = types_equivalent(&items[j].pointed, &x.pointed);
                    t.check(oracle, || {
                        format!("over {params}: descriptors equal but no homomorphisms: {} vs {}", items[j].label, x.label)
                    });
                    placed = true;
                    break;
                }
            }
            if !placed {
                reps.push(i);
            }
        }
        for (a, &i) in reps.iter().enumerate() {
            for &j in &reps[a + 1..] {
                let oracle = types_equivalent(&items[i].pointed, &items[j].pointed);
                t.check(!oracle, || {
                    format!("over {params}: descriptors differ but homomorphisms exist: {} vs {}", items[i].label, items[j].label)
                });
            }
        }
        classes_total += reps.len();
    }
    Ok(t.report(
        6,
        format!("{triples} triples (M ≤p N, a) with |N| ≤ {TYPE_BOUND}, {classes_total} type classes"),
    ))
}

fn ulm_suite() -> Result<SuiteReport> {
    let mut t = Tally::new();
    let big = groups_up_to_order(256);
    for g in &big {
        let back = reconstruct(&ulm_invariants(g)?)?;
        t.check(back.is_isomorphic(g), || format!("reconstruct(ulm({g})) = {back}"));
    }
    let small: Vec<&FgGroup> = big.iter().filter(|g| g.order().expect("finite") <= BigInt::from(128)).collect();
    let invs = small.iter().map(|g| ulm_invariants(g)).collect::<Result<Vec<_>>>()?;
    for i in 0..small.len() {
        for j in 0..small.len() {
            let same = invs[i] == invs[j];
            t.check(same == small[i].is_isomorphic(small[j]), || {
                format!("{} vs {}: invariants equal = {same}", small[i], small[j])
            });
        }
    }
    Ok(t.report(
        7,
        format!("round trip on {} groups of order ≤ 256, completeness on {}² pairs", big.len(), small.len()),
    ))
}

#[derive(Clone, Copy, Debug)]
enum Rel {
    Lt,
    Eq,
    Le,
}

/// Statements with their status in ZFC: `True`/`False` for theorems about
/// the statement or its negation, `Unknown` for independent ones.
const SOUNDNESS: [(&str, Rel, &str, TriBool); 30] = [
    ("aleph0", Rel::Lt, "2^aleph0", TriBool::True),
    ("beth(omega)", Rel::Lt, "beth(omega)^aleph0", TriBool::True),
    ("aleph1", Rel::Le, "2^aleph0", TriBool::True),
    ("aleph1^aleph0", Rel::Eq, "2^aleph0", TriBool::True),
    ("3^aleph0", Rel::Eq, "2^aleph0", TriBool::True),
    ("lambda", Rel::Lt, "2^lambda", TriBool::True),
    ("aleph(omega)", Rel::Lt, "aleph(omega)^aleph0", TriBool::True),
    ("aleph(omega)", Rel::Le, "beth(omega)", TriBool::True),
    ("aleph3", Rel::Lt, "beth(omega)", TriBool::True),
    ("beth2", Rel::Eq, "2^2^aleph0", TriBool::True),
    ("aleph0 + aleph1", Rel::Eq, "aleph1", TriBool::True),
    ("(2^aleph0)^aleph0", Rel::Eq, "2^aleph0", TriBool::True),
    ("beth1", Rel::Lt, "beth2", TriBool::True),
    ("aleph0 * beth(omega)", Rel::Eq, "beth(omega)", TriBool::True),
    ("aleph2", Rel::Le, "2^aleph1", TriBool::True),
    ("lambda", Rel::Le, "lambda^aleph0", TriBool::True),
    ("beth(omega)", Rel::Eq, "beth(omega)^aleph0", TriBool::False),
    ("2^aleph0", Rel::Eq, "aleph0", TriBool::False),
    ("aleph2", Rel::Lt, "aleph1", TriBool::False),
    ("aleph(omega)^aleph0", Rel::Eq, "aleph(omega)", TriBool::False),
    ("2^lambda", Rel::Le, "lambda", TriBool::False),
    ("beth3", Rel::Lt, "beth1", TriBool::False),
    ("aleph1", Rel::Eq, "2^aleph0", TriBool::Unknown),
    ("aleph2", Rel::Eq, "2^aleph0", TriBool::Unknown),
    ("2^aleph0", Rel::Lt, "2^aleph1", TriBool::Unknown),
    ("aleph(omega)", Rel::Lt, "beth(omega)", TriBool::Unknown),
    ("2^aleph0", Rel::Lt, "aleph(omega)", TriBool::Unknown),
    ("aleph1^aleph0", Rel::Eq, "aleph1", TriBool::Unknown),
    ("lambda^aleph0", Rel::Eq, "lambda", TriBool::Unknown),
    ("lambda", Rel::Le, "2^aleph0", TriBool::Unknown),
];

/// Cardinals `μ` for which `μ^ℵ0` must be recognized as stable.
const STABLE_POWERS: [&str; 16] = [
    "aleph0",
    "aleph1",
    "aleph2",
    "aleph(omega)",
    "beth1",
    "beth2",
    "beth(omega)",
    "lambda",
    "2^lambda",
    "lambda + aleph1",
    "lambda * beth(omega)",
    "2^aleph1",
    "aleph(omega)^aleph1",
    "5",
    "kappa^lambda",
    "(2^aleph0)^aleph1 + mu",
];

fn stability_suite() -> Result<SuiteReport> {
    let mut t = Tally::new();
    let parse = |s: &str| CardinalExpr::parse(s).expect("well-formed literal");
    let bw = stability_predicate(&parse("beth(omega)"))?;
    t.check(bw.verdict == TriBool::False && bw.reason.starts_with("König"), || {
        format!("stability of ℶω: {} ({})", bw.verdict, bw.reason)
    });
    let a1 = stability_predicate(&parse("aleph1"))?;
    t.check(a1.verdict == TriBool::Unknown, || format!("stability of ℵ1: {}", a1.verdict));
    for s in STABLE_POWERS {
        let mu = CardinalExpr::pow(parse(s), CardinalExpr::aleph0());
        let v = stability_predicate(&mu)?;
        t.check(v.verdict == TriBool::True, || format!("stability of ({s})^ℵ0: {} ({})", v.verdict, v.reason));
    }
    let mut unsound = 0;
    for (a, rel, b, want) in SOUNDNESS {
        let c = compare(&parse(a), &parse(b));
        let got = match rel {
            Rel::Lt => c.lt,
            Rel::Eq => c.eq,
            Rel::Le => c.le,
        };
        if got != TriBool::Unknown && got != want {
            unsound += 1;
        }
        t.check(got == want, || format!("{a} {rel:?} {b}: engine {got}, expected {want}"));
    }
    Ok(t.report(
        8,
        format!("ℶω, ℵ1, {} powers μ^ℵ0, {} soundness items, {unsound} unsound", STABLE_POWERS.len(), SOUNDNESS.len()),
    ))
}

/// Golden strings, one `key = value` per line.
pub const LIMIT_MODEL_GOLDEN: &str = include_str!("../golden/limit_models.txt");

pub fn limit_model_key(variant: Variant, cof: CofinalityClass, unicode: bool) -> String {
    format!(
        "{}.{}.{}",
        match variant {
            Variant::Torsion => "tor".to_string(),
            Variant::PGroup(p) => format!("p{p}"),
        },
        match cof {
            CofinalityClass::Uncountable => "w1",
            CofinalityClass::Countable => "w",
        },
        if unicode { "unicode" } else { "ascii" }
    )
}

fn limit_model_suite() -> Result<SuiteReport> {
    let mut t = Tally::new();
    let golden: BTreeMap<&str, &str> = LIMIT_MODEL_GOLDEN
        .lines()
        .filter_map(|l| l.split_once(" = "))
        .map(|(k, v)| (k.trim(), v))
        .collect();
    let lambda = CardinalExpr::var("lambda");
    for variant in [Variant::Torsion, Variant::PGroup(2), Variant::PGroup(3)] {
        let uncountable = limit_model_template(&lambda, CofinalityClass::Uncountable, variant)?.group;
        let countable = limit_model_template(&lambda, CofinalityClass::Countable, variant)?.group;
        for (cof, g) in [(CofinalityClass::Uncountable, &uncountable), (CofinalityClass::Countable, &countable)] {
            for unicode in [true, false] {
                let key = limit_model_key(variant, cof, unicode);
                let got = if unicode { g.unicode() } else { g.ascii() };
                let want = golden.get(key.as_str()).copied();
                t.check(want == Some(got.as_str()), || format!("{key}: got `{got}`, golden {want:?}"));
            }
        }
        let expected = match &uncountable {
            SymbolicGroup::DirectSum(xs) => SymbolicGroup::DirectSum(vec![
                xs[0].clone().direct_power(CardinalExpr::aleph0()),
                xs[1].clone(),
            ]),
            other => other.clone(),
        };
        t.check(countable == expected, || format!("{variant:?}: countable case is not the ^(ℵ0) power of the first summand"));
    }
    let unstable = limit_model_template(&CardinalExpr::beth(crate::cardinal::Index::Omega), CofinalityClass::Uncountable, Variant::Torsion);
    t.check(matches!(unstable, Err(Error::Unstable { .. })), || "ℶω accepted as stable".into());
    Ok(t.report(9, format!("{} golden strings and the ^(ℵ0) relation", golden.len())))
}

/// `(pattern, expected in t(PE(B)))`; `None` marks an invalid pattern.
fn order_pattern_table() -> Vec<(OrderPattern, Option<bool>)> {
    use OrderPattern::*;
    vec![
        (EventuallyConstant { prefix: vec![1, 2], value: 3 }, Some(true)),
        (EventuallyConstant { prefix: vec![], value: 3 }, Some(true)),
        (EventuallyConstant { prefix: vec![], value: 0 }, Some(true)),
        (EventuallyConstant { prefix: vec![1, 0, 3], value: 1 }, Some(true)),
        (FinitelySupported(vec![]), Some(true)),
        (FinitelySupported(vec![1]), Some(true)),
        (FinitelySupported(vec![1, 2, 3, 4, 5]), Some(true)),
        (FinitelySupported(vec![0, 0, 0, 4]), Some(true)),
        (Linear { num: 1, den: 1, offset: 0 }, Some(false)),
        (Linear { num: 1, den: 2, offset: 0 }, Some(false)),
        (Linear { num: 1, den: 3, offset: 5 }, Some(false)),
        (Linear { num: 2, den: 1, offset: -3 }, Some(false)),
        (Linear { num: 1, den: 100, offset: 0 }, Some(false)),
        (Linear { num: 0, den: 1, offset: 4 }, Some(true)),
        (Linear { num: 0, den: 7, offset: 0 }, Some(true)),
        (Linear { num: 0, den: 1, offset: -2 }, Some(true)),
        (FinitelySupported(vec![2]), None),
        (EventuallyConstant { prefix: vec![1, 3], value: 1 }, None),
        (Linear { num: 1, den: 0, offset: 0 }, None),
        (FinitelySupported(vec![0, 0]), Some(true)),
    ]
}

fn order_pattern_suite() -> Result<SuiteReport> {
    let mut t = Tally::new();
    let table = order_pattern_table();
    for (pattern, want) in &table {
        let got = in_torsion_of_pe(pattern).ok();
        t.check(got == *want, || format!("{pattern:?}: got {got:?}, expected {want:?}"));
        if want.is_some() {
            // Bounded exactly when the sampled exponents stop growing.
            let early = (1..=1000).map(|n| pattern.exponent(n)).max().unwrap_or(0);
            let late = (1001..=100_000).step_by(97).map(|n| pattern.exponent(n)).max().unwrap_or(0).max(early);
            t.check((early == late) == want.unwrap(), || format!("{pattern:?}: sampled exponents disagree"));
            let zero = (1..=1000).all(|n| pattern.exponent(n) == 0);
            t.check(pattern.is_zero() == zero, || format!("{pattern:?}: zero detection"));
        }
    }
    Ok(t.report(10, format!("{} order patterns", table.len())))
}
