use crate::config::{BuildArgs, CheckArgs, Cli, CoeffsArgs, Command, CompareArgs, InputArgs};
use crate::output;
use cyclic_shape::arith::divisors;
use cyclic_shape::forms::{self, trace_zero_via_kronecker};
use cyclic_shape::lattice::{fingerprint, isometric_with_cap, ISOMETRY_DEFAULT_CAP};
use cyclic_shape::matrix::{build_a_d, build_b, build_extended_a, congruence, kronecker_ones};
use cyclic_shape::{
    build_full_trace, build_trace_zero, coeff_literal, coeff_table, CoefficientTable, Error,
    FactoredDiscriminant, IntMatrix, Mode, RamificationProfile, Verdict,
};
use num_bigint::BigInt;
use std::path::{Path, PathBuf};

struct Outcome {
    json: serde_json::Value,
    text: String,
    exit: i32,
}

impl Outcome {
    fn ok(json: serde_json::Value, text: String) -> Self {
        Self {
            json,
            text,
            exit: 0,
        }
    }
}

pub fn run(cli: Cli) -> i32 {
    if let Some(batch) = &cli.batch {
        return run_batch(batch);
    }
    let Some(command) = &cli.command else {
        eprintln!("error: a subcommand or --batch is required (see --help)");
        return 2;
    };
    let format = command_format(command).to_string();
    match dispatch(command) {
        Ok(outcome) => {
            if format == "json" {
                println!("{}", serde_json::to_string(&outcome.json).unwrap());
            } else {
                print!("{}", outcome.text);
            }
            outcome.exit
        }
        Err(err) => {
            println!("{}", serde_json::to_string(&output::error_json(&err)).unwrap());
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

fn command_format(command: &Command) -> &str {
    let input = match command {
        Command::Build(a) => &a.input,
        Command::Coeffs(a) => &a.input,
        Command::Check(a) => &a.input,
        Command::Isometry(a) => &a.input,
        Command::Shape(a) => &a.input,
    };
    &input.format
}

fn dispatch(command: &Command) -> Result<Outcome, Error> {
    match command {
        Command::Build(args) => cmd_build(args),
        Command::Coeffs(args) => cmd_coeffs(args),
        Command::Check(args) => cmd_check(args),
        Command::Isometry(args) => cmd_compare(args, CompareKind::Isometry),
        Command::Shape(args) => cmd_compare(args, CompareKind::Shape),
    }
}

fn parse_mode(input: &InputArgs) -> Result<Mode, Error> {
    match input.mode.as_str() {
        "strict" => Ok(Mode::Strict),
        "permissive" => Ok(Mode::Permissive),
        other => Err(Error::InvalidArgument(format!(
            "unknown mode {other:?} (expected strict or permissive)"
        ))),
    }
}

fn check_format(input: &InputArgs) -> Result<(), Error> {
    match input.format.as_str() {
        "text" | "json" => Ok(()),
        other => Err(Error::InvalidArgument(format!(
            "unknown format {other:?} (expected text or json)"
        ))),
    }
}

fn require_m(input: &InputArgs) -> Result<u64, Error> {
    let m = input
        .m
        .ok_or_else(|| Error::InvalidArgument("--m is required".into()))?;
    if m < 2 {
        return Err(Error::DegreeTooSmall { m });
    }
    Ok(m)
}

fn read_file(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::ParseFailure(format!("cannot read {}: {e}", path.display())))
}

fn parse_disc_json(text: &str) -> Result<FactoredDiscriminant, Error> {
    serde_json::from_str(text).map_err(|e| Error::ParseFailure(format!("discriminant: {e}")))
}

fn resolve_disc(input: &InputArgs) -> Result<FactoredDiscriminant, Error> {
    let sources =
        input.disc.is_some() as u8 + input.disc_file.is_some() as u8 + input.disc_int.is_some() as u8;
    if sources != 1 {
        return Err(Error::InvalidArgument(
            "exactly one of --disc, --disc-file, --disc-int is required".into(),
        ));
    }
    if let Some(inline) = &input.disc {
        if inline.trim_start().starts_with('{') {
            return parse_disc_json(inline);
        }
        return parse_disc_json(&read_file(Path::new(inline))?);
    }
    if let Some(path) = &input.disc_file {
        return parse_disc_json(&read_file(path)?);
    }
    let raw = input.disc_int.as_ref().expect("checked above");
    let n: BigInt = raw
        .parse()
        .map_err(|_| Error::ParseFailure(format!("not an integer: {raw:?}")))?;
    FactoredDiscriminant::from_integer(&n)
}

fn cmd_build(args: &BuildArgs) -> Result<Outcome, Error> {
    check_format(&args.input)?;
    let m = require_m(&args.input)?;
    let mode = parse_mode(&args.input)?;
    let disc = resolve_disc(&args.input)?;
    let form = build_trace_zero(m, &disc, mode)?;
    let full = if args.full {
        Some(build_full_trace(m, &disc, mode)?)
    } else {
        None
    };
    let fp = match args.theta_bound {
        Some(bound) => Some(fingerprint(form.gram(), &BigInt::from(bound))?),
        None => None,
    };
    let json = output::build_json(
        m,
        &disc,
        &args.input.mode,
        form.gram(),
        full.as_ref().map(|f| f.gram()),
        fp.as_ref(),
    );
    let mut text = form.gram().render_text();
    if let Some(f) = &full {
        text.push_str("\nfull trace form:\n");
        text.push_str(&f.gram().render_text());
    }
    if let Some(fp) = &fp {
        text.push_str(&format!(
            "\nfingerprint: det = {}, min = {}, theta = {}\n",
            fp.determinant,
            fp.minimum,
            fp.theta
                .iter()
                .map(|(k, c)| format!("{k}:{c}"))
                .collect::<Vec<_>>()
                .join(" ")
        ));
    }
    Ok(Outcome::ok(json, text))
}

fn cmd_coeffs(args: &CoeffsArgs) -> Result<Outcome, Error> {
    check_format(&args.input)?;
    let m = require_m(&args.input)?;
    let mode = parse_mode(&args.input)?;
    let disc = resolve_disc(&args.input)?;
    let profile = RamificationProfile::validate(m, &disc, mode)?;
    let table = coeff_table(&profile)?;
    let mut json = output::coeff_table_json(&table);
    json.as_object_mut()
        .unwrap()
        .insert("profile".into(), profile.report_json());
    let mut text = output::coeff_table_text(&table);
    if !table.discrepancies().is_empty() {
        let mut notes = Vec::new();
        for disc_entry in table.discrepancies() {
            let d = disc_entry.divisor;
            let note = format!(
                "closed-form a_{d} = {} disagrees with the conductor-system value {}; the system value is emitted",
                disc_entry.literal,
                table.get(d)?
            );
            text.push_str(&format!("warning: {note}\n"));
            notes.push(serde_json::Value::from(note));
        }
        json.as_object_mut()
            .unwrap()
            .insert("warnings".into(), serde_json::Value::Array(notes));
    }
    if mode == Mode::Permissive {
        // display contract: show the literal d = m value when it disagrees
        let literal_am = coeff_literal(&profile, m)?;
        if &literal_am != table.get(m)? {
            let obj = json.as_object_mut().unwrap();
            obj.insert("literal_a_m".into(), literal_am.to_string().into());
            obj.insert(
                "warning".into(),
                format!(
                    "literal a_{m} = {literal_am} differs from normalized a_{m} = {}",
                    table.get(m)?
                )
                .into(),
            );
            text.push_str(&format!(
                "warning: literal a_{m} = {literal_am} differs from normalized a_{m} = {}\n",
                table.get(m)?
            ));
        }
    }
    Ok(Outcome::ok(json, text))
}

struct InvariantRun {
    lines: Vec<(String, Result<(), String>)>,
}

impl InvariantRun {
    fn new() -> Self {
        Self { lines: Vec::new() }
    }

    fn run(&mut self, name: &str, check: impl FnOnce() -> Result<(), String>) -> bool {
        if self.lines.iter().any(|(_, r)| r.is_err()) {
            return false; // stop at the first failure
        }
        let result = check();
        let ok = result.is_ok();
        self.lines.push((name.to_string(), result));
        ok
    }
}

fn conductor_product(profile: &RamificationProfile, g: u64) -> BigInt {
    let mut rhs = BigInt::from(1);
    for d in divisors(profile.m()).into_iter().skip(1) {
        if g % d != 0 {
            rhs *= profile.w_and_f(d).expect("divisor of m").0;
        }
    }
    if profile.disc().sign() < 0 && g % 2 == 1 {
        -rhs
    } else {
        rhs
    }
}

fn reconciliation_detail(
    profile: &RamificationProfile,
    table: &CoefficientTable,
) -> Result<(), String> {
    let m = profile.m();
    // every system row must hold for the emitted table
    for g in divisors(m) {
        let have = table.eigenvalue_on_class(g).map_err(|e| e.to_string())?;
        let want = conductor_product(profile, g);
        if have != want {
            return Err(format!(
                "system row g = {g}: sum d*a_d = {have}, conductor product = {want}"
            ));
        }
    }
    if profile.disc().sign() > 0 {
        // literal closed form against the system for every d < m
        for d in divisors(m) {
            if d == 1 || d == m {
                continue;
            }
            let lit = coeff_literal(profile, d).map_err(|e| e.to_string())?;
            if &lit != table.get(d).map_err(|e| e.to_string())? {
                return Err(format!("literal a_{d} = {lit} != system {}", table.get(d).unwrap()));
            }
        }
        let a1 = profile.disc().radical();
        if &a1 != table.get(1).map_err(|e| e.to_string())? {
            return Err(format!("a_1 = {} != rad(disc) = {a1}", table.get(1).unwrap()));
        }
    }
    Ok(())
}

fn cmd_check(args: &CheckArgs) -> Result<Outcome, Error> {
    check_format(&args.input)?;
    let m = require_m(&args.input)?;
    let mode = parse_mode(&args.input)?;
    let disc = resolve_disc(&args.input)?;
    let profile = RamificationProfile::validate(m, &disc, mode)?;

    let compare_target = match &args.compare {
        Some(path) => Some(load_matrix_file(path)?),
        None => None,
    };

    let mut run = InvariantRun::new();
    let mut table: Option<CoefficientTable> = None;
    run.run("coefficient reconciliation", || match coeff_table(&profile) {
        Ok(t) => {
            let r = reconciliation_detail(&profile, &t);
            table = Some(t);
            r
        }
        Err(e) => Err(e.to_string()),
    });
    if let Some(table) = table.clone() {
        run.run("normalization row", || {
            let s = table.eigenvalue_on_class(m).map_err(|e| e.to_string())?;
            if s == BigInt::from(1) {
                Ok(())
            } else {
                Err(format!("sum d*a_d = {s} != 1"))
            }
        });
        run.run("kronecker identity", || {
            let b = build_b(m).map_err(|e| e.to_string())?;
            for d in divisors(m) {
                let lhs =
                    congruence(&b, &build_a_d(m, d).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
                if d == m {
                    if !lhs.is_zero() {
                        return Err("B^T A_m B != 0".into());
                    }
                } else {
                    let rhs = kronecker_ones(d, &build_extended_a(m / d).map_err(|e| e.to_string())?)
                        .map_err(|e| e.to_string())?;
                    if lhs != rhs {
                        return Err(format!("B^T A_{d} B != 1_{d} (x) A'_{}", m / d));
                    }
                }
            }
            Ok(())
        });
        let form = build_trace_zero(m, &disc, mode)?;
        run.run("kronecker-sum consistency", || {
            let via = trace_zero_via_kronecker(&table, m).map_err(|e| e.to_string())?;
            if &via == form.gram() {
                Ok(())
            } else {
                Err("minor of kronecker sum differs from A_hat assembly".into())
            }
        });
        run.run("determinant law", || {
            let det = form.gram().det_exact();
            let want = BigInt::from(m) * disc.value();
            if det != want {
                return Err(format!("det A(d) = {det} != m*d = {want}"));
            }
            let full = build_full_trace(m, &disc, mode).map_err(|e| e.to_string())?;
            if !forms::full_form_invariants_hold(&full) {
                return Err("full trace Gram: det != d or row sums != 1".into());
            }
            Ok(())
        });
        if let Some(external) = &compare_target {
            run.run("golden identity", || {
                if external == form.gram() {
                    Ok(())
                } else {
                    Err("external matrix differs from built A(d)".into())
                }
            });
        }
    }

    let passed = run.lines.iter().all(|(_, r)| r.is_ok());
    let mut text = String::new();
    let mut invariants = Vec::new();
    for (name, result) in &run.lines {
        match result {
            Ok(()) => {
                text.push_str(&format!("PASS {name}\n"));
                invariants.push(serde_json::json!({ "name": name, "status": "pass" }));
            }
            Err(detail) => {
                text.push_str(&format!("FAIL {name}: {detail}\n"));
                invariants
                    .push(serde_json::json!({ "name": name, "status": "fail", "detail": detail }));
            }
        }
    }
    let json = serde_json::json!({
        "m": m,
        "disc": serde_json::to_value(&disc).unwrap(),
        "passed": passed,
        "invariants": invariants,
    });
    Ok(Outcome {
        json,
        text,
        exit: if passed { 0 } else { 1 },
    })
}

fn load_matrix_file(path: &Path) -> Result<IntMatrix, Error> {
    let text = read_file(path)?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| Error::ParseFailure(format!("{}: {e}", path.display())))?;
    IntMatrix::from_json(&value)
}

enum CompareKind {
    Isometry,
    Shape,
}

/// A comparison target file holds either a Gram matrix ("rows") or a
/// discriminant ("factors"), the latter built with the same m and mode.
fn load_compare_target(
    path: &Path,
    m: Option<u64>,
    mode: Mode,
) -> Result<IntMatrix, Error> {
    let text = read_file(path)?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| Error::ParseFailure(format!("{}: {e}", path.display())))?;
    if value.get("rows").is_some() {
        return IntMatrix::from_json(&value);
    }
    if value.get("factors").is_some() {
        let disc: FactoredDiscriminant = serde_json::from_value(value)
            .map_err(|e| Error::ParseFailure(format!("{}: {e}", path.display())))?;
        let m = m.ok_or_else(|| {
            Error::InvalidArgument("--m is required to build a discriminant target".into())
        })?;
        return Ok(build_trace_zero(m, &disc, mode)?.gram().clone());
    }
    Err(Error::ParseFailure(format!(
        "{}: expected a matrix (\"rows\") or discriminant (\"factors\") object",
        path.display()
    )))
}

fn isometry_cap() -> usize {
    match std::env::var("CYCLIC_SHAPE_MAX_DIM") {
        Ok(v) => v
            .parse::<usize>()
            .map(|c| c.clamp(1, cyclic_shape::lattice::ENUM_MAX_DIM))
            .unwrap_or(ISOMETRY_DEFAULT_CAP),
        Err(_) => ISOMETRY_DEFAULT_CAP,
    }
}

fn cmd_compare(args: &CompareArgs, kind: CompareKind) -> Result<Outcome, Error> {
    check_format(&args.input)?;
    let mode = parse_mode(&args.input)?;
    let (left, right) = match (&args.left, &args.right) {
        (Some(l), Some(r)) => (load_matrix_file(l)?, load_matrix_file(r)?),
        (None, None) => {
            let m = require_m(&args.input)?;
            let disc = resolve_disc(&args.input)?;
            let built = build_trace_zero(m, &disc, mode)?.gram().clone();
            let target_path: &PathBuf = args.compare.as_ref().ok_or_else(|| {
                Error::InvalidArgument(
                    "--compare target (or --left/--right) is required".into(),
                )
            })?;
            let target = load_compare_target(target_path, Some(m), mode)?;
            (built, target)
        }
        _ => {
            return Err(Error::InvalidArgument(
                "--left and --right must be given together".into(),
            ))
        }
    };
    match kind {
        CompareKind::Isometry => {
            let report = isometric_with_cap(&left, &right, isometry_cap())?;
            let json = report.to_json();
            let mut text = format!("{}\n", report.verdict.as_str());
            if let Some(w) = &report.witness {
                text.push_str("witness:\n");
                text.push_str(&w.render_text());
            }
            if let Some(e) = &report.evidence {
                text.push_str(&format!("separating: {e}\n"));
            }
            let exit = if report.verdict == Verdict::Isometric {
                0
            } else {
                1
            };
            Ok(Outcome { json, text, exit })
        }
        CompareKind::Shape => {
            let scale = forms::shape_equal_grams(&left, &right)?;
            match scale {
                Some((p, q)) => Ok(Outcome {
                    json: serde_json::json!({
                        "verdict": "equal_shape",
                        "scale": { "num": p.to_string(), "den": q.to_string() },
                    }),
                    text: format!("equal shape (right ~ {p}/{q} * left)\n"),
                    exit: 0,
                }),
                None => Ok(Outcome {
                    json: serde_json::json!({ "verdict": "different_shape" }),
                    text: "different shape\n".to_string(),
                    exit: 1,
                }),
            }
        }
    }
}

fn run_batch(path: &Path) -> i32 {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read batch file {}: {e}", path.display());
            return 3;
        }
    };
    let mut first_failure = 0;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let exit = match run_batch_line(line) {
            Ok(outcome) => {
                println!("{}", serde_json::to_string(&outcome.json).unwrap());
                outcome.exit
            }
            Err(err) => {
                println!("{}", serde_json::to_string(&output::error_json(&err)).unwrap());
                err.exit_code()
            }
        };
        if exit != 0 && first_failure == 0 {
            first_failure = exit;
        }
    }
    first_failure
}

fn run_batch_line(line: &str) -> Result<Outcome, Error> {
    let value: serde_json::Value = serde_json::from_str(line)
        .map_err(|e| Error::ParseFailure(format!("batch line: {e}")))?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::ParseFailure("batch line must be a JSON object".into()))?;
    let cmd = obj
        .get("cmd")
        .and_then(|c| c.as_str())
        .ok_or_else(|| Error::ParseFailure("batch line needs a \"cmd\" string".into()))?;
    let input = InputArgs {
        m: obj.get("m").and_then(|m| m.as_u64()),
        disc: obj.get("disc").map(|d| {
            if d.is_string() {
                d.as_str().unwrap().to_string()
            } else {
                serde_json::to_string(d).unwrap()
            }
        }),
        disc_file: obj
            .get("disc_file")
            .and_then(|p| p.as_str())
            .map(PathBuf::from),
        disc_int: obj
            .get("disc_int")
            .map(|n| match n {
                serde_json::Value::String(s) => s.clone(),
                other => other.to_string(),
            }),
        mode: obj
            .get("mode")
            .and_then(|s| s.as_str())
            .unwrap_or("strict")
            .to_string(),
        format: "json".to_string(),
    };
    let path_of = |key: &str| obj.get(key).and_then(|p| p.as_str()).map(PathBuf::from);
    match cmd {
        "build" => cmd_build(&BuildArgs {
            input,
            full: obj.get("full").and_then(|f| f.as_bool()).unwrap_or(false),
            theta_bound: obj.get("theta_bound").and_then(|t| t.as_u64()),
        }),
        "coeffs" => cmd_coeffs(&CoeffsArgs { input }),
        "check" => cmd_check(&CheckArgs {
            input,
            compare: path_of("compare"),
        }),
        "isometry" => cmd_compare(
            &CompareArgs {
                input,
                left: path_of("left"),
                right: path_of("right"),
                compare: path_of("compare"),
            },
            CompareKind::Isometry,
        ),
        "shape" => cmd_compare(
            &CompareArgs {
                input,
                left: path_of("left"),
                right: path_of("right"),
                compare: path_of("compare"),
            },
            CompareKind::Shape,
        ),
        other => Err(Error::ParseFailure(format!("unknown cmd {other:?}"))),
    }
}
