//! Subcommands of the `morita` binary.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use morita_core::checks::{Analysis, Claim, ClaimCheck};
use morita_core::ideals::{check_ideal, elementwise_prime, elementwise_semiprime, enumerate_ideals};
use morita_core::modstruct::{is_prime_submodule, refutes_prime_submodule, ModuleView};
use morita_core::morita::{
    build_context_ring, check_prime_quadruple, check_semiprime_quadruple, context_prime_radical, decompose_ideal,
    is_prime_onesided_ideal, side_decomposition, Caps, ContextElement, MoritaContext,
};
use morita_core::{AlgebraError, FiniteRing, Ideal, Side, Subset, Verdict};

use crate::document::{parse_inline_ideal, parse_mctx, NamedIdeal, ResolvedDocument};
use crate::error::{CliError, EXIT_CAPACITY, EXIT_INVALID_INPUT, EXIT_OK, EXIT_PROPERTY_FAILED};
use crate::registry::{builtin_registry, looks_builtin};

/// Claim keys accepted by `check --theorem`.
pub const CLAIM_KEYS: [(&str, Claim); 12] = [
    ("2.1", Claim::IdealStructure),
    ("2.2", Claim::OneSidedSpaces),
    ("2.3", Claim::PrimeRightIdealColumns),
    ("2.5", Claim::SemiprimeClosureSets),
    ("2.6", Claim::PrimeClosureSets),
    ("2.7", Claim::PrimeIdealCriterion),
    ("2.9", Claim::RadicalFormula),
    ("2.10", Claim::RadicalQuotient),
    ("2.11", Claim::SemiprimeIdealCriterion),
    ("2.13", Claim::PrimeContextCriterion),
    ("2.14", Claim::SemiprimeContextCriterion),
    ("ks", Claim::ScalarContextCriterion),
];

#[derive(Parser, Debug)]
#[command(name = "morita", version, about = "Analyse Morita contexts over finite rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Largest context ring order and ideal lattice size to attempt.
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Print one key=value pair per line instead of the full report.
    #[arg(long, global = true)]
    summary: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the context axioms and print basic data.
    Validate { src: String },
    /// List the ideals of the context ring.
    Ideals {
        src: String,
        #[arg(long, value_enum, default_value = "two")]
        side: SideArg,
    },
    /// Classify every proper ideal as prime and/or semiprime.
    Primes { src: String },
    /// Compute the prime radical of the context ring two ways.
    Radical { src: String },
    /// Decompose an ideal given by name or as `[side:]I/V1/W1/J`.
    Decompose {
        src: String,
        #[arg(long)]
        ideal: String,
    },
    /// Check one structural claim exhaustively.
    Check {
        src: String,
        #[arg(long, value_parser = ["2.1", "2.2", "2.3", "2.5", "2.6", "2.7", "2.9", "2.10", "2.11", "2.13", "2.14", "ks"])]
        theorem: String,
    },
    /// Reproduce one of the worked examples.
    Example {
        #[arg(value_parser = ["ex2.4", "ex2.8", "ex2.12"])]
        name: String,
    },
    /// Full analysis: validation, ideals, primes, radical and every check.
    Report { src: String },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SideArg {
    Two,
    Left,
    Right,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Two => Side::Two,
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        }
    }
}

/// What a command printed and how it ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Text report plus the key=value summary of the same facts.
struct Out {
    summary: bool,
    text: String,
    pairs: String,
}

impl Out {
    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn kv(&mut self, key: &str, value: impl std::fmt::Display) {
        let _ = writeln!(self.pairs, "{key}={value}");
    }

    fn into_stdout(self) -> String {
        if self.summary {
            self.pairs
        } else {
            self.text
        }
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Runs the CLI on `argv` (including the program name).
pub fn run_command<I, T>(argv: I) -> CommandOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() { (String::new(), rendered) } else { (rendered, String::new()) };
            return CommandOutput { code, stdout, stderr };
        }
    };
    let caps = cli.cap.map_or_else(Caps::default, |n| Caps { order: n, lattice: n });
    let mut out = Out {
        summary: cli.summary,
        text: String::new(),
        pairs: String::new(),
    };
    let result = match &cli.command {
        Command::Validate { src } => load(src).map(|doc| validate(&mut out, &doc)),
        Command::Ideals { src, side } => load(src).and_then(|doc| ideals(&mut out, &doc.ctx, (*side).into(), &caps)),
        Command::Primes { src } => load(src).and_then(|doc| primes(&mut out, &doc.ctx, &caps)),
        Command::Radical { src } => load(src).and_then(|doc| radical(&mut out, &doc.ctx, &caps)),
        Command::Decompose { src, ideal } => load(src).and_then(|doc| decompose(&mut out, &doc, ideal, &caps)),
        Command::Check { src, theorem } => load(src).and_then(|doc| check(&mut out, &doc.ctx, theorem, &caps)),
        Command::Example { name } => example(&mut out, name, &caps),
        Command::Report { src } => load(src).and_then(|doc| report(&mut out, &doc, &caps)),
    };
    match result {
        Ok(code) => CommandOutput {
            code,
            stdout: out.into_stdout(),
            stderr: String::new(),
        },
        Err(e) => CommandOutput {
            code: e.exit_code(),
            stdout: out.into_stdout(),
            stderr: format!("error: {e}\n"),
        },
    }
}

/// Resolves `<src>`: a builtin name or a path to an `.mctx` file.
pub fn load(src: &str) -> Result<ResolvedDocument, CliError> {
    let doc = if looks_builtin(src) || !Path::new(src).exists() && !src.contains(['/', '.']) {
        builtin_registry(src)?
    } else {
        let text = std::fs::read_to_string(src).map_err(|source| CliError::Io {
            path: src.to_string(),
            source,
        })?;
        parse_mctx(&text).map_err(|error| CliError::Parse {
            src: src.to_string(),
            error,
        })?
    };
    doc.resolve()
}

fn describe_ring(ring: &FiniteRing) -> String {
    format!("{} (order {})", ring.name(), ring.order())
}

fn validate(out: &mut Out, doc: &ResolvedDocument) -> i32 {
    let ctx = &doc.ctx;
    out.line(format!("context {}", ctx.name()));
    out.line(format!("  R = {}", describe_ring(ctx.r())));
    out.line(format!("  S = {}", describe_ring(ctx.s())));
    for (m, name) in [(ctx.v(), "V"), (ctx.w(), "W")] {
        let all = Subset::full(m.order());
        out.line(format!("  {name} = {} (order {})", m.format_subset(&all), m.order()));
    }
    let order = ctx.order().map_or_else(|| "overflow".to_string(), |n| n.to_string());
    out.line(format!("  |T| = {order}"));
    out.line(format!("  VW span = {}", ctx.r().format_subset(&ctx.vw_span())));
    out.line(format!("  WV span = {}", ctx.s().format_subset(&ctx.wv_span())));
    out.line(format!("  surjective: {}", yes(ctx.is_surjective())));
    for ideal in &doc.ideals {
        out.line(format!(
            "  ideal {} ({}): {}",
            ideal.name,
            ideal.side,
            ctx.format_quadruple(&ideal.quad)
        ));
    }
    out.line("validation: ok");
    out.kv("context", ctx.name());
    out.kv("order_r", ctx.r().order());
    out.kv("order_v", ctx.v().order());
    out.kv("order_w", ctx.w().order());
    out.kv("order_s", ctx.s().order());
    out.kv("order_t", order);
    out.kv("surjective", ctx.is_surjective());
    out.kv("valid", true);
    EXIT_OK
}

fn views(ctx: &MoritaContext, side: Side) -> (ModuleView, ModuleView, &'static str, &'static str) {
    match side {
        Side::Right => (ctx.column_module_rw(), ctx.column_module_vs(), "C1", "C2"),
        _ => (ctx.row_module_rv(), ctx.row_module_ws(), "R1", "R2"),
    }
}

fn ideals(out: &mut Out, ctx: &MoritaContext, side: Side, caps: &Caps) -> Result<i32, CliError> {
    out.kv("side", side);
    if side == Side::Two {
        let quads = Analysis::new(ctx, *caps).quadruples()?.to_vec();
        out.line(format!("two-sided ideals of T({}): {}", ctx.name(), quads.len()));
        for q in &quads {
            out.line(format!("  {}", ctx.format_quadruple(q)));
        }
        out.kv("count", quads.len());
        return Ok(EXIT_OK);
    }
    let t = build_context_ring(ctx, caps.order)?;
    let list = enumerate_ideals(&t, side, caps.lattice)?;
    let (first_view, second_view, first, second) = views(ctx, side);
    out.line(format!("{side} ideals of T({}): {}", ctx.name(), list.len()));
    for u in &list {
        let d = side_decomposition(ctx, &t, u)?;
        out.line(format!(
            "  {first}={} {second}={}",
            first_view.format_subset(&d.first),
            second_view.format_subset(&d.second)
        ));
    }
    out.kv("count", list.len());
    Ok(EXIT_OK)
}

fn component_primes(ring: &FiniteRing, caps: &Caps) -> Result<Vec<String>, CliError> {
    Ok(enumerate_ideals(ring, Side::Two, caps.lattice)?
        .iter()
        .filter(|i| i.is_proper() && elementwise_prime(ring, &i.members).holds())
        .map(|i| ring.format_subset(&i.members))
        .collect())
}

fn primes(out: &mut Out, ctx: &MoritaContext, caps: &Caps) -> Result<i32, CliError> {
    let analysis = Analysis::new(ctx, *caps);
    let t = analysis.ring()?;
    out.line(format!("prime ideals of R: {}", component_primes(ctx.r(), caps)?.join(" ")));
    out.line(format!("prime ideals of S: {}", component_primes(ctx.s(), caps)?.join(" ")));
    let (mut proper, mut prime, mut semiprime, mut violations) = (0, 0, 0, 0);
    for q in analysis.proper_quadruples()? {
        proper += 1;
        let p = check_prime_quadruple(ctx, t, q)?;
        let sp = check_semiprime_quadruple(ctx, t, q)?;
        prime += usize::from(p.is_prime);
        semiprime += usize::from(sp.is_semiprime);
        let flag = if p.theorem_violation() || sp.theorem_violation() {
            violations += 1;
            "  CRITERION VIOLATED"
        } else {
            ""
        };
        out.line(format!(
            "  {} prime={} semiprime={}{flag}",
            ctx.format_quadruple(q),
            yes(p.is_prime),
            yes(sp.is_semiprime)
        ));
    }
    out.line(format!("proper ideals: {proper}, prime: {prime}, semiprime: {semiprime}"));
    out.kv("proper_ideals", proper);
    out.kv("prime_ideals", prime);
    out.kv("semiprime_ideals", semiprime);
    out.kv("violations", violations);
    Ok(if violations > 0 { EXIT_PROPERTY_FAILED } else { EXIT_OK })
}

fn radical(out: &mut Out, ctx: &MoritaContext, caps: &Caps) -> Result<i32, CliError> {
    let rep = context_prime_radical(ctx, caps)?;
    let rad = &rep.radical;
    out.line(format!("P(R) = {}", ctx.r().format_subset(&rad.pr)));
    out.line(format!("P(S) = {}", ctx.s().format_subset(&rad.ps)));
    out.line(format!("V0 = {}", ctx.v().format_subset(&rad.v0)));
    out.line(format!("W0 = {}", ctx.w().format_subset(&rad.w0)));
    out.line(format!("descriptions of V0 and W0 agree: {}", yes(rep.descriptions_agree)));
    out.line(format!("P(T) = {}", ctx.format_quadruple(&rad.as_quadruple())));
    out.kv("pr", ctx.r().format_subset(&rad.pr));
    out.kv("v0", ctx.v().format_subset(&rad.v0));
    out.kv("w0", ctx.w().format_subset(&rad.w0));
    out.kv("ps", ctx.s().format_subset(&rad.ps));
    out.kv("descriptions_agree", rep.descriptions_agree);
    let mut code = if rep.descriptions_agree { EXIT_OK } else { EXIT_PROPERTY_FAILED };
    match (&rep.direct, rep.direct_agrees()) {
        (Some(_), Some(true)) => {
            out.line("intersection of the prime ideals of T: agrees");
            out.kv("oracle", "agree");
        }
        (Some(d), _) => {
            out.line(format!("intersection of the prime ideals of T: DISAGREES, {}", ctx.format_quadruple(d)));
            out.kv("oracle", "disagree");
            code = EXIT_PROPERTY_FAILED;
        }
        (None, _) => {
            out.line(format!("intersection of the prime ideals of T: skipped, |T| exceeds {}", caps.order));
            out.kv("oracle", "skipped");
            if code == EXIT_OK {
                code = EXIT_CAPACITY;
            }
        }
    }
    Ok(code)
}

fn fmt_pair(ctx: &MoritaContext, (a, b): (ContextElement, ContextElement)) -> String {
    format!("a={}, b={}", ctx.format_element(a), ctx.format_element(b))
}

fn decompose(out: &mut Out, doc: &ResolvedDocument, spec: &str, caps: &Caps) -> Result<i32, CliError> {
    let ctx = &doc.ctx;
    let named: NamedIdeal = match doc.ideal(spec) {
        Some(i) => i.clone(),
        None => parse_inline_ideal(ctx, spec)?,
    };
    let t = build_context_ring(ctx, caps.order)?;
    let members = named.quad.to_subset(ctx);
    out.line(format!("ideal {} ({}): {}", named.name, named.side, ctx.format_quadruple(&named.quad)));
    out.kv("side", named.side);
    if let Err(reason) = check_ideal(&t, &members, named.side) {
        out.line(format!("not a {} ideal of T: {reason}", named.side));
        out.kv("ideal", false);
        return Ok(EXIT_INVALID_INPUT);
    }
    out.kv("ideal", true);
    let u = Ideal {
        members,
        side: named.side,
    };
    if named.side == Side::Two {
        let q = decompose_ideal(ctx, &t, &u)?;
        out.line(format!("quadruple: {}", ctx.format_quadruple(&q)));
        if q.is_proper() {
            let p = check_prime_quadruple(ctx, &t, &q)?;
            let sp = check_semiprime_quadruple(ctx, &t, &q)?;
            prime_lines(out, ctx, &p.prime_witness, p.cond2);
            match sp.semiprime_witness {
                None => out.line("semiprime: yes"),
                Some(a) => out.line(format!("semiprime: no, witness {}", ctx.format_element(a))),
            }
            out.line(format!("componentwise semiprime condition: {}", yes(sp.cond2)));
            out.line(format!("surjective: {}", yes(p.surjective)));
            out.kv("prime", p.is_prime);
            out.kv("prime_condition", p.cond2);
            out.kv("semiprime", sp.is_semiprime);
            out.kv("semiprime_condition", sp.cond2);
            out.kv("surjective", p.surjective);
        }
        return Ok(EXIT_OK);
    }
    let d = side_decomposition(ctx, &t, &u)?;
    let (first_view, second_view, first, second) = views(ctx, named.side);
    for (view, name, set) in [(&first_view, first, &d.first), (&second_view, second, &d.second)] {
        out.line(format!("{name} = {}", view.format_subset(set)));
        out.kv(&name.to_lowercase(), view.format_subset(set));
        if !set.is_full() {
            let line = match is_prime_submodule(view, set)? {
                Verdict::Holds => format!("{name} prime submodule: yes"),
                Verdict::Fails((r, m)) => format!(
                    "{name} prime submodule: no, witness r={}, m={}",
                    view.ring().label(r),
                    view.label(m)
                ),
            };
            out.line(line);
        }
    }
    if u.is_proper() {
        let v = is_prime_onesided_ideal(ctx, &t, &u)?;
        match v.witness() {
            None => out.line(format!("prime {} ideal: yes", named.side)),
            Some(&w) => out.line(format!("prime {} ideal: no, witness {}", named.side, fmt_pair(ctx, w))),
        }
        out.kv("prime", v.holds());
    }
    Ok(EXIT_OK)
}

fn prime_lines(out: &mut Out, ctx: &MoritaContext, witness: &Option<(ContextElement, ContextElement)>, cond2: bool) {
    match witness {
        None => out.line("prime: yes"),
        Some(w) => out.line(format!("prime: no, witness {}", fmt_pair(ctx, *w))),
    }
    out.line(format!("componentwise prime condition: {}", yes(cond2)));
}

fn claim_key(claim: Claim) -> &'static str {
    CLAIM_KEYS.iter().find(|(_, c)| *c == claim).map(|(k, _)| *k).expect("every claim has a key")
}

fn write_check(out: &mut Out, c: &ClaimCheck) {
    out.line(format!("[{}] {}", claim_key(c.claim), c.to_string().trim_end()));
}

fn check(out: &mut Out, ctx: &MoritaContext, key: &str, caps: &Caps) -> Result<i32, CliError> {
    let claim = CLAIM_KEYS
        .iter()
        .find(|(k, _)| *k == key)
        .map(|(_, c)| *c)
        .ok_or_else(|| CliError::Invalid(format!("unknown theorem `{key}`")))?;
    let c = Analysis::new(ctx, *caps).check(claim)?;
    write_check(out, &c);
    out.kv("theorem", key);
    out.kv("context", ctx.name());
    out.kv("result", if c.passed() { "PASS" } else { "FAIL" });
    out.kv("cases", c.cases);
    out.kv("failures", c.failures.len());
    Ok(if c.passed() { EXIT_OK } else { EXIT_PROPERTY_FAILED })
}

fn example(out: &mut Out, name: &str, caps: &Caps) -> Result<i32, CliError> {
    let doc = builtin_registry(&format!("paper:{name}"))?.resolve()?;
    let reproduced = match name {
        "ex2.4" => example_right_ideal(out, &doc, caps)?,
        "ex2.8" => example_prime_gap(out, &doc, caps)?,
        _ => example_semiprime(out, &doc, caps)?,
    };
    out.line(format!("reproduced: {}", yes(reproduced)));
    out.kv("example", name);
    out.kv("reproduced", reproduced);
    Ok(if reproduced { EXIT_OK } else { EXIT_PROPERTY_FAILED })
}

fn named<'d>(doc: &'d ResolvedDocument, name: &str) -> Result<&'d NamedIdeal, CliError> {
    doc.ideal(name)
        .ok_or_else(|| CliError::Invalid(format!("builtin has no ideal `{name}`")))
}

/// Full `Z8` context and `U = (4Z8, 4Z8, Z8, Z8)`: a right ideal whose first
/// column space is not prime, so `U` is not a prime right ideal.
fn example_right_ideal(out: &mut Out, doc: &ResolvedDocument, caps: &Caps) -> Result<bool, CliError> {
    let ctx = &doc.ctx;
    let u = named(doc, "U")?;
    let t = build_context_ring(ctx, caps.order)?;
    out.line(format!("context {}, U = {}", ctx.name(), ctx.format_quadruple(&u.quad)));
    let members = u.quad.to_subset(ctx);
    let is_right = check_ideal(&t, &members, Side::Right).is_ok();
    out.line(format!("U is a right ideal of T: {}", yes(is_right)));
    out.kv("right_ideal", is_right);
    if !is_right {
        return Ok(false);
    }
    let ideal = Ideal {
        members,
        side: Side::Right,
    };
    let d = side_decomposition(ctx, &t, &ideal)?;
    let view = ctx.column_module_rw();
    let expected = Subset::from_predicate(view.order(), |x| x / ctx.w().order() % 4 == 0);
    out.line(format!("C1(U) = {}", view.format_subset(&d.first)));
    out.line(format!("C1(U) = 4Z8 + Z8: {}", yes(d.first == expected)));
    out.kv("c1_expected", d.first == expected);

    let first = is_prime_submodule(&view, &d.first)?;
    let c1_prime = first.holds();
    if let Some(&(r, m)) = first.witness() {
        out.line(format!(
            "C1(U) prime submodule: no, first witness r={}, m={}",
            view.ring().label(r),
            view.label(m)
        ));
        out.kv("c1_witness", format!("r={},m={}", view.ring().label(r), view.label(m)));
    } else {
        out.line("C1(U) prime submodule: yes");
    }
    let m22 = view
        .find("(2,2)")
        .ok_or_else(|| CliError::Invalid("module element (2,2) missing".into()))?;
    let refutes = refutes_prime_submodule(&view, &d.first, 2, m22);
    out.line(format!("r=2, m=(2,2) refutes primeness of C1(U): {}", yes(refutes)));
    out.kv("c1_prime", c1_prime);
    out.kv("r2_m22_refutes", refutes);

    let v = is_prime_onesided_ideal(ctx, &t, &ideal)?;
    match v.witness() {
        None => out.line("U prime right ideal: yes"),
        Some(&w) => out.line(format!("U prime right ideal: no, witness {}", fmt_pair(ctx, w))),
    }
    out.kv("u_prime", v.holds());
    Ok(d.first == expected && !c1_prime && refutes && !v.holds())
}

/// `H = (3Z6, 2Z6, 3Z6, 2Z6)` in `(Z6, 2Z6, 3Z6, Z6)`: the componentwise
/// prime condition holds but `H` is not prime, because `VW = WV = 0`.
fn example_prime_gap(out: &mut Out, doc: &ResolvedDocument, caps: &Caps) -> Result<bool, CliError> {
    let ctx = &doc.ctx;
    let h = named(doc, "H")?;
    let t = build_context_ring(ctx, caps.order)?;
    out.line(format!("context {}, H = {}", ctx.name(), ctx.format_quadruple(&h.quad)));
    let members = h.quad.to_subset(ctx);
    let is_ideal = check_ideal(&t, &members, Side::Two).is_ok();
    out.line(format!("H is an ideal of T: {}", yes(is_ideal)));
    out.kv("ideal", is_ideal);
    if !is_ideal {
        return Ok(false);
    }
    out.line(format!(
        "VW span = {}, WV span = {}",
        ctx.r().format_subset(&ctx.vw_span()),
        ctx.s().format_subset(&ctx.wv_span())
    ));
    let rep = check_prime_quadruple(ctx, &t, &h.quad)?;
    let sets = &rep.closure;
    out.line(format!("I prime in R: {}, J prime in S: {}", yes(rep.i_prime), yes(rep.j_prime)));
    out.line(format!(
        "A = {}, B = {}, C = {}, D = {}",
        ctx.v().format_subset(&sets.a),
        ctx.v().format_subset(&sets.b),
        ctx.w().format_subset(&sets.c),
        ctx.w().format_subset(&sets.d)
    ));
    out.line(format!("surjective: {}", yes(rep.surjective)));
    prime_lines(out, ctx, &rep.prime_witness, rep.cond2);

    // the pair diag(3,3), diag(1,2): both outside H, yet aTb inside H
    let a = ContextElement { r: 3, s: 3, ..ctx.zero_element() };
    let b = ContextElement { r: 1, s: 2, ..ctx.zero_element() };
    let (ai, bi) = (ctx.encode(a), ctx.encode(b));
    let refutes = !members.contains(ai)
        && !members.contains(bi)
        && t.elements().all(|x| members.contains(t.mul(t.mul(ai, x), bi)));
    out.line(format!(
        "a={}, b={} outside H with aTb inside H: {}",
        ctx.format_element(a),
        ctx.format_element(b),
        yes(refutes)
    ));
    out.kv("prime_condition", rep.cond2);
    out.kv("surjective", rep.surjective);
    out.kv("prime", rep.is_prime);
    out.kv("diag33_diag12_refutes", refutes);
    Ok(rep.cond2 && !rep.surjective && !rep.is_prime && refutes)
}

/// `H = (2Z4, 2Z4, 2Z4, 0)` in `(Z4, 2Z4, 2Z4, Z4)`: an ideal that is not
/// semiprime, matching `{0}` not being semiprime in `Z4`.
fn example_semiprime(out: &mut Out, doc: &ResolvedDocument, caps: &Caps) -> Result<bool, CliError> {
    let ctx = &doc.ctx;
    let h = named(doc, "H")?;
    let t = build_context_ring(ctx, caps.order)?;
    out.line(format!("context {}, H = {}", ctx.name(), ctx.format_quadruple(&h.quad)));
    let members = h.quad.to_subset(ctx);
    let is_ideal = check_ideal(&t, &members, Side::Two).is_ok();
    out.line(format!("H is an ideal of T: {}", yes(is_ideal)));
    out.kv("ideal", is_ideal);
    if !is_ideal {
        return Ok(false);
    }
    let rep = check_semiprime_quadruple(ctx, &t, &h.quad)?;
    let expected = ContextElement { s: 2, ..ctx.zero_element() };
    match rep.semiprime_witness {
        None => out.line("H semiprime: yes"),
        Some(a) => out.line(format!("H semiprime: no, witness {}", ctx.format_element(a))),
    }
    let j_witness = elementwise_semiprime(ctx.s(), &h.quad.j);
    match j_witness.witness() {
        None => out.line(format!("J = {} semiprime in S: yes", ctx.s().format_subset(&h.quad.j))),
        Some(&a) => out.line(format!(
            "J = {} semiprime in S: no, witness {}",
            ctx.s().format_subset(&h.quad.j),
            ctx.s().label(a)
        )),
    }
    out.line(format!("componentwise semiprime condition: {}", yes(rep.cond2)));
    out.kv("semiprime", rep.is_semiprime);
    out.kv(
        "witness",
        rep.semiprime_witness.map_or_else(|| "none".to_string(), |a| ctx.format_element(a)),
    );
    out.kv("semiprime_condition", rep.cond2);
    Ok(!rep.is_semiprime && rep.semiprime_witness == Some(expected) && !rep.cond2 && !j_witness.holds())
}

fn report(out: &mut Out, doc: &ResolvedDocument, caps: &Caps) -> Result<i32, CliError> {
    let ctx = &doc.ctx;
    out.line("== validation ==");
    validate(out, doc);
    let analysis = Analysis::new(ctx, *caps);
    let mut code = EXIT_OK;
    let mut skipped = false;

    out.line("== ideals ==");
    let quads = analysis.quadruples()?;
    out.line(format!("two-sided: {} ({} proper)", quads.len(), quads.iter().filter(|q| q.is_proper()).count()));
    out.kv("two_sided_ideals", quads.len());
    match analysis.ring() {
        Ok(t) => {
            for side in [Side::Right, Side::Left] {
                match enumerate_ideals(t, side, caps.lattice) {
                    Ok(list) => {
                        out.line(format!("{side}: {}", list.len()));
                        out.kv(&format!("{side}_ideals"), list.len());
                    }
                    Err(e @ AlgebraError::Capacity { .. }) => {
                        out.line(format!("{side}: skipped ({e})"));
                        skipped = true;
                    }
                    Err(e) => return Err(e.into()),
                }
            }
        }
        Err(e @ AlgebraError::Capacity { .. }) => {
            out.line(format!("one-sided: skipped ({e})"));
            skipped = true;
        }
        Err(e) => return Err(e.into()),
    }

    if analysis.ring().is_ok() {
        out.line("== primes ==");
        let mut inner = Out {
            summary: false,
            text: String::new(),
            pairs: String::new(),
        };
        code = code.max(primes(&mut inner, ctx, caps)?);
        out.text.push_str(&inner.text);
        out.pairs.push_str(&inner.pairs);

        out.line("== radical ==");
        let mut inner = Out {
            summary: false,
            text: String::new(),
            pairs: String::new(),
        };
        let rc = radical(&mut inner, ctx, caps)?;
        if rc == EXIT_PROPERTY_FAILED {
            code = EXIT_PROPERTY_FAILED;
        }
        out.text.push_str(&inner.text);
        out.pairs.push_str(&inner.pairs);
    }

    out.line("== checks ==");
    let mut failed = 0;
    for (key, claim) in CLAIM_KEYS {
        match analysis.check(claim) {
            Ok(c) => {
                write_check(out, &c);
                out.kv(&format!("check_{key}"), if c.passed() { "PASS" } else { "FAIL" });
                if !c.passed() {
                    failed += 1;
                }
            }
            Err(e @ AlgebraError::Capacity { .. }) => {
                out.line(format!("[{key}] SKIPPED {} ({e})", claim.description()));
                out.kv(&format!("check_{key}"), "SKIPPED");
                skipped = true;
            }
            Err(e) => return Err(e.into()),
        }
    }
    out.kv("failed_checks", failed);
    if failed > 0 {
        code = EXIT_PROPERTY_FAILED;
    }
    Ok(if code == EXIT_OK && skipped { EXIT_CAPACITY } else { code })
}
