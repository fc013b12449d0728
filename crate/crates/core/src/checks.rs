//! Exhaustive checks of the structural results about context rings on one
//! concrete context. Each check returns the number of cases examined, the
//! cases that contradict the claim, and informational notes.

use std::cell::OnceCell;
use std::fmt;

use crate::error::Result;
use crate::finring::FiniteRing;
use crate::ideals::{check_ideal, elementwise_prime, elementwise_semiprime, enumerate_ideals, is_semiprime_ring, Ideal, Side};
use crate::modstruct::{enumerate_submodules, is_prime_submodule, ModuleView};
use crate::morita::{
    build_context_ring, build_ks_context, check_prime_quadruple, check_quadruple, check_semiprime_quadruple, closure_sets,
    context_prime_radical, decompose_ideal, enumerate_context_ideals, is_prime_context, is_prime_onesided_ideal,
    is_semiprime_context, side_decomposition, verify_quotient_iso, Caps, IdealQuadruple, MoritaContext,
};
use crate::subset::Subset;
use crate::Verdict;

/// The claims that can be checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Claim {
    /// Two-sided ideals of the context ring are exactly the product-form
    /// sets whose entry sets satisfy the eight containments.
    IdealStructure,
    /// One-sided ideals split into column (right) or row (left) spaces.
    OneSidedSpaces,
    /// Column spaces of a prime right ideal are prime submodules.
    PrimeRightIdealColumns,
    /// Semiprime quadruples have matching closure sets.
    SemiprimeClosureSets,
    /// Closure sets of prime ideals `I`, `J` are prime submodules.
    PrimeClosureSets,
    /// Primeness of an ideal quadruple versus its componentwise condition.
    PrimeIdealCriterion,
    /// Prime radical of the context ring from the component radicals.
    RadicalFormula,
    /// `T/P(T)` is the ring of the quotient context.
    RadicalQuotient,
    /// Semiprimeness of an ideal quadruple versus its componentwise condition.
    SemiprimeIdealCriterion,
    /// Primeness of the context ring versus its components.
    PrimeContextCriterion,
    /// Semiprimeness of the context ring versus its components.
    SemiprimeContextCriterion,
    /// Primeness and semiprimeness of `K_s(R)` for every central `s`.
    ScalarContextCriterion,
}

impl Claim {
    pub const ALL: [Claim; 12] = [
        Claim::IdealStructure,
        Claim::OneSidedSpaces,
        Claim::PrimeRightIdealColumns,
        Claim::SemiprimeClosureSets,
        Claim::PrimeClosureSets,
        Claim::PrimeIdealCriterion,
        Claim::RadicalFormula,
        Claim::RadicalQuotient,
        Claim::SemiprimeIdealCriterion,
        Claim::PrimeContextCriterion,
        Claim::SemiprimeContextCriterion,
        Claim::ScalarContextCriterion,
    ];

    pub fn description(self) -> &'static str {
        match self {
            Claim::IdealStructure => "ideals of T are the quadruples satisfying the eight containments",
            Claim::OneSidedSpaces => "one-sided ideals are determined by their column/row spaces",
            Claim::PrimeRightIdealColumns => "column spaces of prime right ideals are prime submodules",
            Claim::SemiprimeClosureSets => "semiprime quadruples have A = B and C = D",
            Claim::PrimeClosureSets => "closure sets of prime ideals are prime submodules",
            Claim::PrimeIdealCriterion => "prime quadruple criterion",
            Claim::RadicalFormula => "prime radical of T from P(R), V0, W0, P(S)",
            Claim::RadicalQuotient => "T/P(T) is isomorphic to the quotient context ring",
            Claim::SemiprimeIdealCriterion => "semiprime quadruple criterion",
            Claim::PrimeContextCriterion => "prime context ring criterion",
            Claim::SemiprimeContextCriterion => "semiprime context ring criterion",
            Claim::ScalarContextCriterion => "K_s(R) prime/semiprime criterion",
        }
    }
}

/// Outcome of checking one claim on one context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimCheck {
    pub claim: Claim,
    pub cases: usize,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl ClaimCheck {
    fn new(claim: Claim) -> Self {
        Self {
            claim,
            cases: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for ClaimCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let plural = if self.cases == 1 { "" } else { "s" };
        writeln!(f, "{verdict} {} ({} case{plural})", self.claim.description(), self.cases)?;
        for x in &self.failures {
            writeln!(f, "  failure: {x}")?;
        }
        for x in &self.notes {
            writeln!(f, "  note: {x}")?;
        }
        Ok(())
    }
}

/// Lazily built context ring and ideal lists shared between checks.
pub struct Analysis<'a> {
    ctx: &'a MoritaContext,
    caps: Caps,
    ring: OnceCell<FiniteRing>,
    quadruples: OnceCell<Vec<IdealQuadruple>>,
}

fn cached<'c, T>(cell: &'c OnceCell<T>, make: impl FnOnce() -> Result<T>) -> Result<&'c T> {
    if let Some(x) = cell.get() {
        return Ok(x);
    }
    let value = make()?;
    Ok(cell.get_or_init(|| value))
}

impl<'a> Analysis<'a> {
    pub fn new(ctx: &'a MoritaContext, caps: Caps) -> Self {
        Self {
            ctx,
            caps,
            ring: OnceCell::new(),
            quadruples: OnceCell::new(),
        }
    }

    pub fn context(&self) -> &MoritaContext {
        self.ctx
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn ring(&self) -> Result<&FiniteRing> {
        cached(&self.ring, || build_context_ring(self.ctx, self.caps.order))
    }

    /// All ideal quadruples, in canonical order.
    pub fn quadruples(&self) -> Result<&[IdealQuadruple]> {
        cached(&self.quadruples, || enumerate_context_ideals(self.ctx, self.caps.lattice)).map(Vec::as_slice)
    }

    pub fn proper_quadruples(&self) -> Result<impl Iterator<Item = &IdealQuadruple>> {
        Ok(self.quadruples()?.iter().filter(|q| q.is_proper()))
    }

    pub fn check(&self, claim: Claim) -> Result<ClaimCheck> {
        match claim {
            Claim::IdealStructure => self.ideal_structure(),
            Claim::OneSidedSpaces => self.one_sided_spaces(),
            Claim::PrimeRightIdealColumns => self.prime_right_ideal_columns(),
            Claim::SemiprimeClosureSets => self.semiprime_closure_sets(),
            Claim::PrimeClosureSets => self.prime_closure_sets(),
            Claim::PrimeIdealCriterion => self.prime_ideal_criterion(),
            Claim::RadicalFormula => self.radical_formula(),
            Claim::RadicalQuotient => self.radical_quotient(),
            Claim::SemiprimeIdealCriterion => self.semiprime_ideal_criterion(),
            Claim::PrimeContextCriterion => self.prime_context_criterion(),
            Claim::SemiprimeContextCriterion => self.semiprime_context_criterion(),
            Claim::ScalarContextCriterion => check_scalar_contexts(self.ctx.r(), &self.caps),
        }
    }

    fn ideal_structure(&self) -> Result<ClaimCheck> {
        let (ctx, t) = (self.ctx, self.ring()?);
        let mut out = ClaimCheck::new(Claim::IdealStructure);

        let mut direct: Vec<IdealQuadruple> = enumerate_ideals(t, Side::Two, self.caps.lattice)?
            .iter()
            .map(|u| decompose_ideal(ctx, t, u))
            .collect::<Result<_>>()?;
        direct.sort();
        let quads = self.quadruples()?;
        if direct != quads {
            out.failures.push(format!(
                "{} ideals of T by direct enumeration, {} quadruples from components",
                direct.len(),
                quads.len()
            ));
        }

        // every product-form candidate: ideal of T exactly when the eight containments hold
        let cap = self.caps.lattice;
        let ir = enumerate_ideals(ctx.r(), Side::Two, cap)?;
        let is = enumerate_ideals(ctx.s(), Side::Two, cap)?;
        let sv = enumerate_submodules(ctx.v(), Side::Two, cap)?;
        let sw = enumerate_submodules(ctx.w(), Side::Two, cap)?;
        for i in &ir {
            for v1 in &sv {
                for w1 in &sw {
                    for j in &is {
                        let q = IdealQuadruple {
                            i: i.members.clone(),
                            v1: v1.members.clone(),
                            w1: w1.members.clone(),
                            j: j.members.clone(),
                        };
                        out.cases += 1;
                        let is_ideal = check_ideal(t, &q.to_subset(ctx), Side::Two).is_ok();
                        let conditions = check_quadruple(ctx, &q).is_ok();
                        if is_ideal != conditions {
                            out.failures.push(format!(
                                "{}: ideal of T = {is_ideal}, containments = {conditions}",
                                ctx.format_quadruple(&q)
                            ));
                        }
                    }
                }
            }
        }
        out.notes.push(format!("{} two-sided ideals", quads.len()));
        Ok(out)
    }

    fn one_sided_spaces(&self) -> Result<ClaimCheck> {
        let (ctx, t) = (self.ctx, self.ring()?);
        let mut out = ClaimCheck::new(Claim::OneSidedSpaces);
        for side in [Side::Right, Side::Left] {
            let ideals = enumerate_ideals(t, side, self.caps.lattice)?;
            out.notes.push(format!("{} {side} ideals", ideals.len()));
            for u in &ideals {
                out.cases += 1;
                if let Err(e) = side_decomposition(ctx, t, u) {
                    out.failures.push(format!("{side} ideal of size {}: {e}", u.members.count()));
                }
            }
        }
        Ok(out)
    }

    fn prime_right_ideal_columns(&self) -> Result<ClaimCheck> {
        let (ctx, t) = (self.ctx, self.ring()?);
        let mut out = ClaimCheck::new(Claim::PrimeRightIdealColumns);
        let views = [(ctx.column_module_rw(), "C1"), (ctx.column_module_vs(), "C2")];
        let mut vacuous = 0;
        for u in enumerate_ideals(t, Side::Right, self.caps.lattice)? {
            if !u.is_proper() || !is_prime_onesided_ideal(ctx, t, &u)?.holds() {
                continue;
            }
            out.cases += 1;
            let d = side_decomposition(ctx, t, &u)?;
            for ((view, name), space) in views.iter().zip([&d.first, &d.second]) {
                if space.is_full() {
                    vacuous += 1;
                    continue;
                }
                if let Verdict::Fails((r, m)) = is_prime_submodule(view, space)? {
                    out.failures.push(format!(
                        "{name} = {} of a prime right ideal is not prime: r={}, m={}",
                        view.format_subset(space),
                        view.ring().label(r),
                        view.label(m)
                    ));
                }
            }
        }
        if vacuous > 0 {
            out.notes.push(format!("{vacuous} column spaces equal their whole module (nothing to check)"));
        }
        Ok(out)
    }

    fn semiprime_closure_sets(&self) -> Result<ClaimCheck> {
        let (ctx, t) = (self.ctx, self.ring()?);
        let mut out = ClaimCheck::new(Claim::SemiprimeClosureSets);
        for q in self.proper_quadruples()? {
            if !elementwise_semiprime(t, &q.to_subset(ctx)).holds() {
                continue;
            }
            out.cases += 1;
            let sets = closure_sets(ctx, &q.i, &q.j)?;
            if !sets.v_sides_agree() || !sets.w_sides_agree() {
                out.failures.push(format!("closure sets differ for semiprime {}", ctx.format_quadruple(q)));
            }
        }
        Ok(out)
    }

    fn prime_closure_sets(&self) -> Result<ClaimCheck> {
        let ctx = self.ctx;
        let mut out = ClaimCheck::new(Claim::PrimeClosureSets);
        let primes = |ring: &FiniteRing| -> Result<Vec<Ideal>> {
            Ok(enumerate_ideals(ring, Side::Two, self.caps.lattice)?
                .into_iter()
                .filter(|i| i.is_proper() && elementwise_prime(ring, &i.members).holds())
                .collect())
        };
        let views: [(ModuleView, &str); 4] = [
            (ctx.v().left_view(), "A"),
            (ctx.v().right_view(), "B"),
            (ctx.w().right_view(), "C"),
            (ctx.w().left_view(), "D"),
        ];
        let mut vacuous = 0;
        for i in primes(ctx.r())? {
            for j in primes(ctx.s())? {
                out.cases += 1;
                let sets = closure_sets(ctx, &i.members, &j.members)?;
                for ((view, name), set) in views.iter().zip([&sets.a, &sets.b, &sets.c, &sets.d]) {
                    if set.is_full() {
                        vacuous += 1;
                        continue;
                    }
                    if let Verdict::Fails((r, m)) = is_prime_submodule(view, set)? {
                        out.failures.push(format!(
                            "I={}, J={}: {name} = {} not prime (r={}, m={})",
                            ctx.r().format_subset(&i.members),
                            ctx.s().format_subset(&j.members),
                            view.format_subset(set),
                            view.ring().label(r),
                            view.label(m)
                        ));
                    }
                }
            }
        }
        if vacuous > 0 {
            out.notes.push(format!("{vacuous} closure sets equal their whole module (nothing to check)"));
        }
        Ok(out)
    }

    fn prime_ideal_criterion(&self) -> Result<ClaimCheck> {
        let (ctx, t) = (self.ctx, self.ring()?);
        let mut out = ClaimCheck::new(Claim::PrimeIdealCriterion);
        let mut converse_gaps = Vec::new();
        let mut surjective = None;
        for q in self.proper_quadruples()? {
            out.cases += 1;
            let rep = check_prime_quadruple(ctx, t, q)?;
            surjective = Some(rep.surjective);
            if !rep.forward_holds() {
                out.failures.push(format!("prime but componentwise condition fails: {}", ctx.format_quadruple(q)));
            } else if !rep.converse_holds() {
                if rep.surjective {
                    out.failures.push(format!("surjective, condition holds, not prime: {}", ctx.format_quadruple(q)));
                } else {
                    converse_gaps.push(ctx.format_quadruple(q));
                }
            }
        }
        if surjective == Some(false) {
            out.notes.push("context is not surjective; converse not claimed".into());
        }
        for g in converse_gaps {
            out.notes.push(format!("condition holds but not prime (converse gap): {g}"));
        }
        Ok(out)
    }

    fn semiprime_ideal_criterion(&self) -> Result<ClaimCheck> {
        let (ctx, t) = (self.ctx, self.ring()?);
        let mut out = ClaimCheck::new(Claim::SemiprimeIdealCriterion);
        for q in self.proper_quadruples()? {
            out.cases += 1;
            let rep = check_semiprime_quadruple(ctx, t, q)?;
            if rep.theorem_violation() {
                out.failures.push(format!(
                    "semiprime = {}, componentwise = {}: {}",
                    rep.is_semiprime,
                    rep.cond2,
                    ctx.format_quadruple(q)
                ));
            }
        }
        Ok(out)
    }

    fn radical_formula(&self) -> Result<ClaimCheck> {
        self.ring()?;
        let ctx = self.ctx;
        let mut out = ClaimCheck::new(Claim::RadicalFormula);
        out.cases = 1;
        let rep = context_prime_radical(ctx, &self.caps)?;
        let formula = ctx.format_quadruple(&rep.radical.as_quadruple());
        if !rep.descriptions_agree {
            out.failures.push("the two descriptions of V0 or W0 differ".into());
        }
        match &rep.direct {
            Some(d) if *d != rep.radical.as_quadruple() => {
                out.failures.push(format!("formula {formula}, direct {}", ctx.format_quadruple(d)));
            }
            _ => out.notes.push(format!("P(T) = {formula}")),
        }
        Ok(out)
    }

    fn radical_quotient(&self) -> Result<ClaimCheck> {
        let mut out = ClaimCheck::new(Claim::RadicalQuotient);
        out.cases = 1;
        if let Verdict::Fails(f) = verify_quotient_iso(self.ctx, &self.caps)? {
            out.failures.push(format!("entrywise projection is not an isomorphism: {f}"));
        }
        Ok(out)
    }

    fn prime_context_criterion(&self) -> Result<ClaimCheck> {
        let mut out = ClaimCheck::new(Claim::PrimeContextCriterion);
        out.cases = 1;
        let rep = is_prime_context(self.ctx, &self.caps)?;
        for v in rep.violations() {
            out.failures.push(format!("implication {v} fails"));
        }
        if !rep.surjective && (rep.r_prime || rep.s_prime) && !rep.t_prime {
            out.notes.push("R or S prime but T not prime (context not surjective)".into());
        }
        Ok(out)
    }

    fn semiprime_context_criterion(&self) -> Result<ClaimCheck> {
        let mut out = ClaimCheck::new(Claim::SemiprimeContextCriterion);
        out.cases = 1;
        let rep = is_semiprime_context(self.ctx, &self.caps)?;
        for v in rep.violations() {
            out.failures.push(format!("implication {v} fails"));
        }
        if !rep.surjective && (rep.r_semiprime || rep.s_semiprime) && !rep.t_semiprime {
            out.notes.push("R or S semiprime but T not semiprime (context not surjective)".into());
        }
        Ok(out)
    }
}

/// Outcome for one scalar `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScalarCase {
    pub s: usize,
    pub t_prime: bool,
    pub t_semiprime: bool,
    pub predicted_prime: bool,
    pub predicted_semiprime: bool,
}

/// `K_s(R)` is prime exactly when `R` is prime and `s ≠ 0`, and semiprime
/// exactly when `R` is semiprime and `s` is not a zero-divisor. Evaluated
/// for every central `s`.
pub fn scalar_context_cases(ring: &FiniteRing, caps: &Caps) -> Result<Vec<ScalarCase>> {
    let r_prime = elementwise_prime(ring, &Subset::singleton(ring.order(), ring.zero())).holds();
    let r_semiprime = is_semiprime_ring(ring, caps.lattice)?;
    let mut out = Vec::new();
    for s in ring.elements().filter(|&s| ring.commutes_with_all(s).is_none()) {
        let k = build_ks_context(ring, s)?;
        let t = build_context_ring(&k, caps.order)?;
        let zero = Subset::singleton(t.order(), t.zero());
        out.push(ScalarCase {
            s,
            t_prime: elementwise_prime(&t, &zero).holds(),
            t_semiprime: is_semiprime_ring(&t, caps.lattice)?,
            predicted_prime: r_prime && s != ring.zero(),
            predicted_semiprime: r_semiprime && !ring.is_zero_divisor(s),
        });
    }
    Ok(out)
}

pub fn check_scalar_contexts(ring: &FiniteRing, caps: &Caps) -> Result<ClaimCheck> {
    let mut out = ClaimCheck::new(Claim::ScalarContextCriterion);
    for c in scalar_context_cases(ring, caps)? {
        out.cases += 1;
        let s = ring.label(c.s);
        if c.t_prime != c.predicted_prime {
            out.failures.push(format!("s={s}: K_s prime = {}, predicted {}", c.t_prime, c.predicted_prime));
        }
        if c.t_semiprime != c.predicted_semiprime {
            out.failures.push(format!(
                "s={s}: K_s semiprime = {}, predicted {}",
                c.t_semiprime, c.predicted_semiprime
            ));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::make_zn;

    #[test]
    fn every_claim_passes_on_small_contexts() {
        let z2 = make_zn(2).unwrap();
        let contexts = [
            MoritaContext::full_zn(2).unwrap(),
            MoritaContext::zero_bimodule("zero:2,2", &z2, &z2).unwrap(),
            MoritaContext::triangular_zn(2, 2).unwrap(),
            MoritaContext::zn_subsets("ex", 4, &[0, 2], &[0, 2]).unwrap(),
        ];
        for ctx in &contexts {
            let a = Analysis::new(ctx, Caps::default());
            for claim in Claim::ALL {
                let c = a.check(claim).unwrap();
                assert!(c.passed(), "{} on {}: {c}", claim.description(), ctx.name());
            }
        }
    }

    #[test]
    fn scalar_cases_over_z4() {
        let cases = scalar_context_cases(&make_zn(4).unwrap(), &Caps::default()).unwrap();
        assert_eq!(cases.len(), 4);
        assert!(cases.iter().all(|c| !c.t_prime && !c.t_semiprime));
    }
}
