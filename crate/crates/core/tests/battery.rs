//! Every claim on every standard context.

use std::time::Instant;

use morita_core::checks::{Analysis, Claim};
use morita_core::finring::make_zn;
use morita_core::morita::{build_ks_context, Caps, MoritaContext};

fn battery() -> Vec<MoritaContext> {
    let z = |n| make_zn(n).unwrap();
    let mut out: Vec<MoritaContext> = (2..=6).map(|n| MoritaContext::full_zn(n).unwrap()).collect();
    out.push(build_ks_context(&z(4), 2).unwrap());
    for s in 0..6 {
        out.push(build_ks_context(&z(6), s).unwrap());
    }
    out.push(MoritaContext::triangular_zn(4, 2).unwrap());
    out.push(MoritaContext::zero_bimodule("zero:2,2", &z(2), &z(2)).unwrap());
    out.push(MoritaContext::zero_bimodule("zero:2,4", &z(2), &z(4)).unwrap());
    out.push(MoritaContext::full_zn(8).unwrap().with_name("ex2.4"));
    out.push(MoritaContext::zn_subsets("ex2.8", 6, &[0, 2, 4], &[0, 3]).unwrap());
    out.push(MoritaContext::zn_subsets("ex2.12", 4, &[0, 2], &[0, 2]).unwrap());
    out
}

fn run(claim: Claim) {
    for ctx in battery() {
        let start = Instant::now();
        let a = Analysis::new(&ctx, Caps::default());
        let c = a.check(claim).unwrap();
        eprintln!("{:>10} {:?} {} cases {:?}", ctx.name(), claim, c.cases, start.elapsed());
        assert!(c.passed(), "{} on {}:\n{c}", claim.description(), ctx.name());
    }
}

#[test]
fn ideal_structure() {
    run(Claim::IdealStructure);
}

#[test]
fn one_sided_spaces() {
    run(Claim::OneSidedSpaces);
}

#[test]
fn prime_right_ideal_columns() {
    run(Claim::PrimeRightIdealColumns);
}

#[test]
fn semiprime_closure_sets() {
    run(Claim::SemiprimeClosureSets);
}

#[test]
fn prime_closure_sets() {
    run(Claim::PrimeClosureSets);
}

#[test]
fn prime_ideal_criterion() {
    run(Claim::PrimeIdealCriterion);
}

#[test]
fn radical_formula() {
    run(Claim::RadicalFormula);
}

#[test]
fn radical_quotient() {
    run(Claim::RadicalQuotient);
}

#[test]
fn semiprime_ideal_criterion() {
    run(Claim::SemiprimeIdealCriterion);
}

#[test]
fn prime_context_criterion() {
    run(Claim::PrimeContextCriterion);
}

#[test]
fn semiprime_context_criterion() {
    run(Claim::SemiprimeContextCriterion);
}
