//! Acceptance criteria. Runs without the libtest harness so that every
//! criterion prints one PASS/FAIL line; exits non-zero if any fails.
//!
//! Expected values come either from the worked examples or from oracles in
//! this file that use plain modular arithmetic and brute force, never the
//! library's own decision procedures.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use morita_cli::builtin_registry;
use morita_cli::registry::BATTERY;
use morita_core::checks::scalar_context_cases;
use morita_core::finring::make_zn;
use morita_core::ideals::{
    check_ideal, elementwise_prime, elementwise_semiprime, enumerate_ideals, is_prime_ideal_pairwise,
    is_semiprime_ideal_pairwise,
};
use morita_core::modstruct::{is_prime_submodule, refutes_prime_submodule};
use morita_core::morita::{
    build_context_ring, check_prime_quadruple, check_semiprime_quadruple, context_prime_radical, decompose_ideal,
    enumerate_context_ideals, is_prime_context, is_prime_onesided_ideal, is_semiprime_context, side_decomposition,
    verify_quotient_iso, Caps, ContextElement, IdealQuadruple, MoritaContext,
};
use morita_core::{FiniteRing, Ideal, Side, Subset, Verdict};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn context(name: &str) -> MoritaContext {
    builtin_registry(name)
        .and_then(|d| d.resolve())
        .unwrap_or_else(|e| panic!("{name}: {e}"))
        .ctx
}

fn battery() -> Vec<MoritaContext> {
    BATTERY.iter().map(|n| context(n)).collect()
}

fn caps() -> Caps {
    Caps::default()
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Matrix product of a residue context `(Z_n, V, W, Z_n)` with both
/// products `k·v·w`, on residue quadruples.
fn residue_mul(n: usize, k: usize, a: [usize; 4], b: [usize; 4]) -> [usize; 4] {
    let [r1, v1, w1, s1] = a;
    let [r2, v2, w2, s2] = b;
    [
        (r1 * r2 + k * v1 * w2) % n,
        (r1 * v2 + v1 * s2) % n,
        (w1 * r2 + s1 * w2) % n,
        (k * w1 * v2 + s1 * s2) % n,
    ]
}

/// Residues of a context element whose four components carry numeric labels.
fn residues(ctx: &MoritaContext, e: ContextElement) -> [usize; 4] {
    let p = |s: String| s.parse::<usize>().expect("numeric label");
    [
        p(ctx.r().label(e.r)),
        p(ctx.v().label(e.v).to_string()),
        p(ctx.w().label(e.w).to_string()),
        p(ctx.s().label(e.s)),
    ]
}

fn all_residue_elements(ctx: &MoritaContext) -> Vec<[usize; 4]> {
    (0..ctx.order().unwrap()).map(|x| residues(ctx, ctx.decode(x))).collect()
}

/// `a·t·b ∈ H` for every `t`, evaluated with residue arithmetic.
fn absorbs(n: usize, elems: &[[usize; 4]], in_h: impl Fn([usize; 4]) -> bool, a: [usize; 4], b: [usize; 4]) -> bool {
    elems.iter().all(|&t| in_h(residue_mul(n, 1, residue_mul(n, 1, a, t), b)))
}

fn criterion_1() -> Outcome {
    let doc = builtin_registry("paper:ex2.4").and_then(|d| d.resolve()).map_err(err)?;
    let ctx = &doc.ctx;
    let u = &doc.ideal("U").ok_or("no ideal U")?.quad;
    let t = build_context_ring(ctx, 10_000).map_err(err)?;
    let members = u.to_subset(ctx);
    check_ideal(&t, &members, Side::Right).map_err(|e| format!("U is not a right ideal: {e}"))?;

    // right-ideal closure by residue arithmetic: u·t stays in U
    let elems = all_residue_elements(ctx);
    let in_u = |x: [usize; 4]| x[0] % 4 == 0 && x[1] % 4 == 0;
    let gens = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]];
    ensure!(
        elems.iter().filter(|&&x| in_u(x)).all(|&x| gens.iter().all(|&g| in_u(residue_mul(8, 1, x, g)))),
        "oracle: U not closed under right multiplication"
    );

    let ideal = Ideal {
        members,
        side: Side::Right,
    };
    let d = side_decomposition(ctx, &t, &ideal).map_err(err)?;
    let view = ctx.column_module_rw();
    let expected: BTreeSet<(usize, usize)> = (0..8).step_by(4).flat_map(|r| (0..8).map(move |w| (r, w))).collect();
    let got: BTreeSet<(usize, usize)> = d.first.iter().map(|x| (x / 8, x % 8)).collect();
    ensure!(got == expected, "C1(U) = {}", view.format_subset(&d.first));

    // prime-submodule refutation by residue arithmetic on Z8 + Z8 (right module)
    let c1 = |(a, b): (usize, usize)| a % 4 == 0 && b < 8;
    let refutes = |r: usize, (a, b): (usize, usize)| {
        !c1((a, b))
            && (0..8).all(|x| c1((a * x * r % 8, b * x * r % 8)))
            && !(0..8).all(|p| (0..8).all(|q| c1((p * r % 8, q * r % 8))))
    };
    ensure!(refutes(2, (2, 2)), "oracle: r=2, m=(2,2) does not refute");
    let m22 = view.find("(2,2)").ok_or("no (2,2)")?;
    ensure!(refutes_prime_submodule(&view, &d.first, 2, m22), "library disagrees on r=2, m=(2,2)");
    let (r, m) = match is_prime_submodule(&view, &d.first).map_err(err)? {
        Verdict::Fails(w) => w,
        Verdict::Holds => return Err("C1(U) reported prime".into()),
    };
    ensure!(refutes(r, (m / 8, m % 8)), "returned witness r={r}, m={} is not a refutation", view.label(m));

    let p = is_prime_onesided_ideal(ctx, &t, &ideal).map_err(err)?;
    let (a, b) = *p.witness().ok_or("U reported prime")?;
    let (ra, rb) = (residues(ctx, a), residues(ctx, b));
    ensure!(
        !in_u(ra) && !in_u(rb) && absorbs(8, &elems, in_u, ra, rb),
        "prime right ideal witness is not a refutation"
    );
    Ok(format!(
        "C1(U)=4Z8+Z8; first witness r={}, m={}; r=2, m=(2,2) refutes; U not prime (witness {}, {})",
        view.ring().label(r),
        view.label(m),
        ctx.format_element(a),
        ctx.format_element(b)
    ))
}

fn criterion_2() -> Outcome {
    let doc = builtin_registry("paper:ex2.8").and_then(|d| d.resolve()).map_err(err)?;
    let ctx = &doc.ctx;
    let h = &doc.ideal("H").ok_or("no ideal H")?.quad;
    let t = build_context_ring(ctx, 10_000).map_err(err)?;
    check_ideal(&t, &h.to_subset(ctx), Side::Two).map_err(|e| format!("H is not an ideal: {e}"))?;
    ensure!(ctx.vw_span().count() == 1 && ctx.wv_span().count() == 1, "VW or WV span is not zero");

    let rep = check_prime_quadruple(ctx, &t, h).map_err(err)?;
    ensure!(rep.cond2, "componentwise condition reported false");
    ensure!(!rep.surjective, "context reported surjective");
    ensure!(!rep.is_prime, "H reported prime");

    let elems = all_residue_elements(ctx);
    let in_h = |x: [usize; 4]| x[0] % 3 == 0 && x[1] % 2 == 0 && x[2] % 3 == 0 && x[3] % 2 == 0;
    let (a, b) = ([3, 0, 0, 3], [1, 0, 0, 2]);
    ensure!(!in_h(a) && !in_h(b) && absorbs(6, &elems, in_h, a, b), "diag(3,3), diag(1,2) do not refute");
    let (wa, wb) = rep.prime_witness.ok_or("no witness")?;
    let (ra, rb) = (residues(ctx, wa), residues(ctx, wb));
    ensure!(!in_h(ra) && !in_h(rb) && absorbs(6, &elems, in_h, ra, rb), "returned witness is not a refutation");
    Ok(format!(
        "cond2=true surjective=false prime=false; diag(3,3), diag(1,2) refute; first witness {}, {}",
        ctx.format_element(wa),
        ctx.format_element(wb)
    ))
}

fn criterion_3() -> Outcome {
    let doc = builtin_registry("paper:ex2.12").and_then(|d| d.resolve()).map_err(err)?;
    let ctx = &doc.ctx;
    let h = &doc.ideal("H").ok_or("no ideal H")?.quad;
    let t = build_context_ring(ctx, 10_000).map_err(err)?;
    check_ideal(&t, &h.to_subset(ctx), Side::Two).map_err(|e| format!("H is not an ideal: {e}"))?;
    let rep = check_semiprime_quadruple(ctx, &t, h).map_err(err)?;
    ensure!(!rep.is_semiprime, "H reported semiprime");
    let w = rep.semiprime_witness.ok_or("no witness")?;
    ensure!(residues(ctx, w) == [0, 0, 0, 2], "witness {} is not diag(0,2)", ctx.format_element(w));
    let elems = all_residue_elements(ctx);
    let in_h = |x: [usize; 4]| x[0] % 2 == 0 && x[1] % 2 == 0 && x[2] % 2 == 0 && x[3] == 0;
    ensure!(absorbs(4, &elems, in_h, [0, 0, 0, 2], [0, 0, 0, 2]), "oracle: diag(0,2) T diag(0,2) not in H");
    ensure!(!rep.cond2, "componentwise condition reported true");
    ensure!(!rep.j_semiprime, "{{0}} reported semiprime in Z4");
    let z4 = make_zn(4).map_err(err)?;
    ensure!(
        elementwise_semiprime(&z4, &Subset::singleton(4, 0)) == Verdict::Fails(2),
        "{{0}} in Z4 should fail with witness 2"
    );
    Ok("H not semiprime, witness diag(0,2); cond2=false ({0} not semiprime in Z4)".into())
}

fn proper_quadruples(ctx: &MoritaContext) -> Result<Vec<IdealQuadruple>, String> {
    Ok(enumerate_context_ideals(ctx, caps().lattice)
        .map_err(err)?
        .into_iter()
        .filter(IdealQuadruple::is_proper)
        .collect())
}

fn criterion_4() -> Outcome {
    let (mut cases, mut surjective_contexts, mut gaps) = (0, 0, Vec::new());
    let mut ex28_recorded = false;
    for ctx in battery() {
        let t = build_context_ring(&ctx, 10_000).map_err(err)?;
        surjective_contexts += usize::from(ctx.is_surjective());
        for q in proper_quadruples(&ctx)? {
            cases += 1;
            let rep = check_prime_quadruple(&ctx, &t, &q).map_err(err)?;
            ensure!(rep.forward_holds(), "{}: prime but cond2 fails at {}", ctx.name(), ctx.format_quadruple(&q));
            if rep.surjective {
                ensure!(rep.converse_holds(), "{}: cond2 but not prime at {}", ctx.name(), ctx.format_quadruple(&q));
            } else if !rep.converse_holds() {
                gaps.push(ctx.name().to_string());
                let h = (Subset::from_members(6, [0, 3]), Subset::from_members(6, [0, 2, 4]));
                if ctx.name() == "paper:ex2.8" && q.i == h.0 && q.j == h.1 && q.v1.is_full() && q.w1.is_full() {
                    ex28_recorded = true;
                }
            }
        }
    }
    ensure!(ex28_recorded, "ex2.8 ideal H not recorded as a converse gap");
    gaps.dedup();
    Ok(format!(
        "{cases} proper quadruples, {surjective_contexts} surjective contexts; converse gaps only in {}",
        gaps.join(", ")
    ))
}

fn criterion_5() -> Outcome {
    let mut n = 0;
    for ctx in battery() {
        let rep = context_prime_radical(&ctx, &caps()).map_err(err)?;
        ensure!(rep.descriptions_agree, "{}: descriptions of V0/W0 differ", ctx.name());
        let direct = rep.direct.as_ref().ok_or_else(|| format!("{}: direct radical skipped", ctx.name()))?;
        ensure!(
            *direct == rep.radical.as_quadruple(),
            "{}: formula {} vs direct {}",
            ctx.name(),
            ctx.format_quadruple(&rep.radical.as_quadruple()),
            ctx.format_quadruple(direct)
        );
        n += 1;
    }
    let ex = context("paper:ex2.12");
    let rep = context_prime_radical(&ex, &caps()).map_err(err)?;
    let even = Subset::from_members(4, [0, 2]);
    ensure!(
        rep.radical.pr == even && rep.radical.ps == even && rep.radical.v0.is_full() && rep.radical.w0.is_full(),
        "ex2.12 radical is {}",
        ex.format_quadruple(&rep.radical.as_quadruple())
    );
    Ok(format!("formula = intersection of primes on {n} contexts"))
}

fn criterion_6() -> Outcome {
    let mut cases = 0;
    for ctx in battery() {
        let t = build_context_ring(&ctx, 10_000).map_err(err)?;
        for q in proper_quadruples(&ctx)? {
            cases += 1;
            let rep = check_semiprime_quadruple(&ctx, &t, &q).map_err(err)?;
            ensure!(
                !rep.theorem_violation(),
                "{}: semiprime={} cond2={} at {}",
                ctx.name(),
                rep.is_semiprime,
                rep.cond2,
                ctx.format_quadruple(&q)
            );
        }
    }
    Ok(format!("semiprime <=> cond2 on {cases} proper quadruples"))
}

fn criterion_7() -> Outcome {
    let mut n = 0;
    for ctx in battery() {
        match verify_quotient_iso(&ctx, &caps()).map_err(err)? {
            Verdict::Holds => n += 1,
            Verdict::Fails(f) => return Err(format!("{}: {f}", ctx.name())),
        }
    }
    Ok(format!("T/P(T) isomorphic to the quotient context ring on {n} contexts"))
}

fn criterion_8() -> Outcome {
    for ctx in battery() {
        let p = is_prime_context(&ctx, &caps()).map_err(err)?;
        ensure!(p.violations().is_empty(), "{}: prime chain fails {:?}", ctx.name(), p.violations());
        let s = is_semiprime_context(&ctx, &caps()).map_err(err)?;
        ensure!(s.violations().is_empty(), "{}: semiprime chain fails {:?}", ctx.name(), s.violations());
    }
    let z22 = is_prime_context(&context("zero:2,2"), &caps()).map_err(err)?;
    ensure!(
        z22.r_prime && z22.s_prime && !z22.t_prime && !z22.surjective,
        "zero:2,2 does not separate (4) from (1)"
    );
    let z24 = is_semiprime_context(&context("zero:2,4"), &caps()).map_err(err)?;
    ensure!(
        z24.r_semiprime && !z24.t_semiprime && !z24.surjective,
        "zero:2,4 does not separate (3) from (1)"
    );
    Ok("implications hold battery-wide; zero:2,2 and zero:2,4 certify the non-surjective gaps".into())
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn criterion_9() -> Outcome {
    let mut cases = 0;
    for n in 2..=6 {
        let ring = make_zn(n).map_err(err)?;
        let n_prime = (2..n).all(|d| n % d != 0);
        let n_squarefree = (2..=n).all(|d| n % (d * d) != 0);
        let results = scalar_context_cases(&ring, &caps()).map_err(err)?;
        ensure!(results.len() == n, "Z{n}: {} central elements", results.len());
        for c in &results {
            cases += 1;
            let prime = n_prime && c.s != 0;
            let semiprime = n_squarefree && gcd(c.s, n) == 1;
            ensure!(c.t_prime == prime, "K_{}(Z{n}) prime = {}", c.s, c.t_prime);
            ensure!(c.t_semiprime == semiprime, "K_{}(Z{n}) semiprime = {}", c.s, c.t_semiprime);
        }
        if n == 6 {
            let sp: Vec<usize> = results.iter().filter(|c| c.t_semiprime).map(|c| c.s).collect();
            ensure!(sp == [1, 5], "K_s(Z6) semiprime for s in {sp:?}");
        }
    }
    Ok(format!("{cases} scalar contexts match; K_s(Z6) semiprime exactly for s in {{1,5}}"))
}

/// Ideals of a ring by filtering all subsets, with direct checks of every
/// closure condition.
fn brute_force_ideals(ring: &FiniteRing, side: Side) -> BTreeSet<Vec<usize>> {
    let n = ring.order();
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << n) {
        let m = |x: usize| mask >> x & 1 == 1;
        if !m(ring.zero()) {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&x| m(x)).collect();
        let closed = members.iter().all(|&a| {
            members.iter().all(|&b| m(ring.add(a, b)))
                && m(ring.neg(a))
                && (0..n).all(|r| {
                    (side == Side::Right || m(ring.mul(r, a))) && (side == Side::Left || m(ring.mul(a, r)))
                })
        });
        if closed {
            out.insert(members);
        }
    }
    out
}

fn criterion_10() -> Outcome {
    // (a) quadruple enumeration against direct enumeration on T
    let mut contexts = 0;
    for ctx in battery() {
        let t = build_context_ring(&ctx, 10_000).map_err(err)?;
        let mut direct: Vec<IdealQuadruple> = enumerate_ideals(&t, Side::Two, caps().lattice)
            .map_err(err)?
            .iter()
            .map(|u| decompose_ideal(&ctx, &t, u))
            .collect::<Result<_, _>>()
            .map_err(err)?;
        direct.sort();
        let quads = enumerate_context_ideals(&ctx, caps().lattice).map_err(err)?;
        ensure!(direct == quads, "{}: {} direct vs {} quadruples", ctx.name(), direct.len(), quads.len());
        contexts += 1;
    }

    // (b) elementwise and ideal-pair forms on every component and context ring
    let mut rings: Vec<FiniteRing> = Vec::new();
    for ctx in battery() {
        rings.push(ctx.r().clone());
        rings.push(ctx.s().clone());
        rings.push(build_context_ring(&ctx, 10_000).map_err(err)?);
    }
    let mut ideals_checked = 0;
    for ring in &rings {
        let lattice = enumerate_ideals(ring, Side::Two, caps().lattice).map_err(err)?;
        for i in lattice.iter().filter(|i| i.is_proper()) {
            ideals_checked += 1;
            let ep = elementwise_prime(ring, &i.members).holds();
            let pp = is_prime_ideal_pairwise(ring, i, &lattice).map_err(err)?;
            let es = elementwise_semiprime(ring, &i.members).holds();
            let ps = is_semiprime_ideal_pairwise(ring, i, &lattice).map_err(err)?;
            ensure!(ep == pp && es == ps, "{}: forms disagree at {}", ring.name(), ring.format_subset(&i.members));
        }
    }

    // (c) enumeration against subset filtering for rings of order at most 16
    let mut small: Vec<FiniteRing> = (2..=16).map(|n| make_zn(n).unwrap()).collect();
    for name in [
        "full:2", "zero:2,2", "zero:2,3", "zero:3,3", "zero:2,4", "zero:4,2", "tri:2,2", "tri:2,4", "tri:4,2", "ks:2:0",
        "ks:2:1",
    ] {
        let t = build_context_ring(&context(name), 16).map_err(err)?;
        small.push(t.tabulated());
    }
    for ring in &small {
        for side in [Side::Two, Side::Left, Side::Right] {
            let fast: BTreeSet<Vec<usize>> = enumerate_ideals(ring, side, caps().lattice)
                .map_err(err)?
                .iter()
                .map(|i| i.members.members())
                .collect();
            ensure!(fast == brute_force_ideals(ring, side), "{} {side}: enumeration differs", ring.name());
        }
    }
    Ok(format!(
        "{contexts} contexts, {ideals_checked} ideals in {} rings, {} small rings on all sides",
        rings.len(),
        small.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, u64); 10] = [
        ("1 right ideal over Z8", criterion_1, 5),
        ("2 prime gap over Z6", criterion_2, 5),
        ("3 semiprime gap over Z4", criterion_3, 2),
        ("4 prime ideal criterion", criterion_4, 120),
        ("5 radical formula", criterion_5, 120),
        ("6 semiprime ideal criterion", criterion_6, 120),
        ("7 radical quotient", criterion_7, 600),
        ("8 prime/semiprime context rings", criterion_8, 600),
        ("9 scalar contexts", criterion_9, 180),
        ("10 oracle equivalences", criterion_10, 600),
    ];
    let mut failed = 0;
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > Duration::from_secs(limit) => Err(format!("took {elapsed:?}, limit {limit} s")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {name}: PASS ({:.2} s) {detail}", elapsed.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("criterion {name}: FAIL ({:.2} s) {why}", elapsed.as_secs_f64());
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
