//! Subcommand dispatch. Every command has a plain-text form and a `--json`
//! form carrying the same mathematical content in a stable
//! `{command, input, result}` object.

use serde_json::{json, Value};

use idop::bn::project_bn;
use idop::filtration::{filtration_dims, log_log_slope};
use idop::ideal::{
    enumerate_ideals, factor_into_primes, height_and_chains, is_prime, minimal_primes,
    prime_from_subset, spectrum, IdealAc, PrimeLabel,
};
use idop::operator::{from_word, Gen, Operator};
use idop::relations::check_defining_relations;
use idop::units::{is_unit, UnitDecision};

use crate::parse::{parse, parse_antichain, parse_subset};
use crate::print::{print_bn, print_canonical, print_polynomial};
use crate::CliError;

pub const HELP: &str = "\
idop — exact arithmetic in the algebra of integro-differential operators

USAGE:
    idop <command> [args] [--json]

EXPRESSION COMMANDS (take -n N for the number of variables):
    norm -n N \"expr\"              canonical form of an operator expression
    apply -n N \"expr\" \"poly\"      apply the operator to a polynomial
    star -n N \"expr\"              the involution (d <-> int, H fixed)
    sigma -n N I \"expr\"           int_I expr d_I
    tau -n N I \"expr\"             d_I expr int_I
    proj-bn -n N \"expr\"           image in the skew Laurent quotient
    unit -n N \"expr\"              YES <inverse> / NO / UNKNOWN

IDEAL COMMANDS (antichain literals like {01,10}; {} is the zero ideal):
    ideal -n N sum A B            lattice join
    ideal -n N prod A B           product (equals intersection)
    ideal -n N cap A B            intersection, computed independently
    ideal -n N contains A B       does A contain B?
    ideal -n N isprime A          prime recognition
    ideal -n N minprimes A        minimal primes over A
    ideal -n N factor A           factorization into incomparable primes
    ideal -n N member \"expr\" A    operator membership in A

LATTICE AND GROWTH COMMANDS:
    dedekind N                    number of ideals in N variables
    spec N                        all prime ideals with heights
    chains N I J                  maximal chains of primes from I to J ({1,3} syntax)
    gk N IMAX                     filtration dimensions and log-log slope
    check-relations N             normalize all defining relations
    selftest                      quick end-to-end sanity battery

EXIT CODES: 0 ok, 1 parse error, 2 domain error, 3 internal invariant violation
";

/// Grammar of operator expressions, shown on parse errors via `--help`.
struct Parsed {
    json: bool,
    arity: Option<usize>,
    positionals: Vec<String>,
}

fn scan_args(args: &[String]) -> Result<Parsed, CliError> {
    let mut json = false;
    let mut arity = None;
    let mut positionals = Vec::new();
    let mut i = 0;
    while i < args.len() {
        let a = &args[i];
        if a == "--json" {
            json = true;
        } else if a == "-n" {
            i += 1;
            let v = args.get(i).ok_or_else(|| {
                CliError::Usage("-n requires a value".into())
            })?;
            let n: usize = v
                .parse()
                .map_err(|_| CliError::Usage(format!("bad arity '{v}'")))?;
            if n == 0 {
                return Err(CliError::Domain("arity must be at least 1".into()));
            }
            arity = Some(n);
        } else if a.starts_with("--") {
            return Err(CliError::Usage(format!("unknown flag '{a}'")));
        } else {
            positionals.push(a.clone());
        }
        i += 1;
    }
    Ok(Parsed {
        json,
        arity,
        positionals,
    })
}

fn need_arity(p: &Parsed) -> Result<usize, CliError> {
    p.arity
        .ok_or_else(|| CliError::Usage("this command requires -n N".into()))
}

fn need_args<'a>(p: &'a Parsed, count: usize, usage: &str) -> Result<&'a [String], CliError> {
    if p.positionals.len() != count {
        return Err(CliError::Usage(format!("usage: {usage}")));
    }
    Ok(&p.positionals)
}

fn nat_arg(s: &str, what: &str) -> Result<usize, CliError> {
    s.parse()
        .map_err(|_| CliError::Usage(format!("bad {what} '{s}'")))
}

fn emit(json_mode: bool, command: &str, input: Value, result: Value, text: String) -> String {
    if json_mode {
        json!({"command": command, "input": input, "result": result}).to_string()
    } else {
        text
    }
}

fn label_list_text(labels: &[PrimeLabel]) -> String {
    labels
        .iter()
        .map(|l| l.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn label_list_json(labels: &[PrimeLabel]) -> Value {
    Value::Array(labels.iter().map(|l| Value::String(l.to_string())).collect())
}

/// Run one CLI invocation. Returns the stdout payload.
pub fn run_command(args: &[String]) -> Result<String, CliError> {
    let Some(cmd) = args.first() else {
        return Err(CliError::Usage(
            "no command given; try 'idop help'".into(),
        ));
    };
    let rest = &args[1..];
    match cmd.as_str() {
        "help" | "--help" | "-h" => Ok(HELP.to_string()),
        "norm" => {
            let p = scan_args(rest)?;
            let n = need_arity(&p)?;
            let [expr] = need_args(&p, 1, "norm -n N \"expr\"")? else {
                unreachable!()
            };
            let op = parse(n, expr)?.eval_operator(n)?;
            let text = print_canonical(&op);
            Ok(emit(
                p.json,
                "norm",
                json!({"arity": n, "expr": expr}),
                Value::String(text.clone()),
                text,
            ))
        }
        "apply" => {
            let p = scan_args(rest)?;
            let n = need_arity(&p)?;
            let [expr, poly] = need_args(&p, 2, "apply -n N \"expr\" \"poly\"")? else {
                unreachable!()
            };
            let op = parse(n, expr)?.eval_operator(n)?;
            let pl = parse(n, poly)?.eval_polynomial(n)?;
            let image = idop::poly::apply(&op, &pl)?;
            let text = print_polynomial(&image);
            Ok(emit(
                p.json,
                "apply",
                json!({"arity": n, "expr": expr, "poly": poly}),
                Value::String(text.clone()),
                text,
            ))
        }
        "star" => {
            let p = scan_args(rest)?;
            let n = need_arity(&p)?;
            let [expr] = need_args(&p, 1, "star -n N \"expr\"")? else {
                unreachable!()
            };
            let op = parse(n, expr)?.eval_operator(n)?;
            let text = print_canonical(&op.involution());
            Ok(emit(
                p.json,
                "star",
                json!({"arity": n, "expr": expr}),
                Value::String(text.clone()),
                text,
            ))
        }
        "sigma" | "tau" => {
            let p = scan_args(rest)?;
            let n = need_arity(&p)?;
            let usage = format!("{cmd} -n N I \"expr\"");
            let [coord, expr] = need_args(&p, 2, &usage)? else {
                unreachable!()
            };
            let i = nat_arg(coord, "coordinate")?;
            let op = parse(n, expr)?.eval_operator(n)?;
            let out = if cmd == "sigma" {
                op.sigma(i)?
            } else {
                op.tau(i)?
            };
            let text = print_canonical(&out);
            Ok(emit(
                p.json,
                cmd,
                json!({"arity": n, "coord": i, "expr": expr}),
                Value::String(text.clone()),
                text,
            ))
        }
        "proj-bn" => {
            let p = scan_args(rest)?;
            let n = need_arity(&p)?;
            let [expr] = need_args(&p, 1, "proj-bn -n N \"expr\"")? else {
                unreachable!()
            };
            let op = parse(n, expr)?.eval_operator(n)?;
            let text = print_bn(&project_bn(&op));
            Ok(emit(
                p.json,
                "proj-bn",
                json!({"arity": n, "expr": expr}),
                Value::String(text.clone()),
                text,
            ))
        }
        "unit" => {
            let p = scan_args(rest)?;
            let n = need_arity(&p)?;
            let [expr] = need_args(&p, 1, "unit -n N \"expr\"")? else {
                unreachable!()
            };
            let op = parse(n, expr)?.eval_operator(n)?;
            let (text, result) = match is_unit(&op)? {
                UnitDecision::Yes(inv) => {
                    let s = print_canonical(&inv);
                    (
                        format!("YES {s}"),
                        json!({"decision": "YES", "inverse": s}),
                    )
                }
                UnitDecision::No => ("NO".to_string(), json!({"decision": "NO", "inverse": null})),
                UnitDecision::Unknown => (
                    "UNKNOWN".to_string(),
                    json!({"decision": "UNKNOWN", "inverse": null}),
                ),
            };
            Ok(emit(
                p.json,
                "unit",
                json!({"arity": n, "expr": expr}),
                result,
                text,
            ))
        }
        "ideal" => {
            let p = scan_args(rest)?;
            let n = need_arity(&p)?;
            let Some(sub) = p.positionals.first() else {
                return Err(CliError::Usage(
                    "usage: ideal -n N <sum|prod|cap|contains|isprime|minprimes|factor|member> ..."
                        .into(),
                ));
            };
            let sub = sub.clone();
            let tail = &p.positionals[1..];
            let input_json = |args: &[String]| {
                json!({"arity": n, "op": sub, "args": args.to_vec()})
            };
            match sub.as_str() {
                "sum" | "prod" | "cap" => {
                    let [a, b] = tail else {
                        return Err(CliError::Usage(format!("usage: ideal -n N {sub} A B")));
                    };
                    let ia = parse_antichain(n, a)?;
                    let ib = parse_antichain(n, b)?;
                    let out = match sub.as_str() {
                        "sum" => ia.sum(&ib)?,
                        "prod" => ia.product(&ib)?,
                        _ => ia.intersect(&ib)?,
                    };
                    let text = out.to_string();
                    Ok(emit(
                        p.json,
                        "ideal",
                        input_json(tail),
                        Value::String(text.clone()),
                        text,
                    ))
                }
                "contains" => {
                    let [a, b] = tail else {
                        return Err(CliError::Usage("usage: ideal -n N contains A B".into()));
                    };
                    let v = parse_antichain(n, a)?.contains(&parse_antichain(n, b)?)?;
                    Ok(emit(
                        p.json,
                        "ideal",
                        input_json(tail),
                        Value::Bool(v),
                        v.to_string(),
                    ))
                }
                "isprime" => {
                    let [a] = tail else {
                        return Err(CliError::Usage("usage: ideal -n N isprime A".into()));
                    };
                    let ia = parse_antichain(n, a)?;
                    let (text, result) = match is_prime(&ia) {
                        Some(l) => (
                            format!("prime {l}"),
                            json!({"is_prime": true, "label": l.to_string()}),
                        ),
                        None => (
                            "not prime".to_string(),
                            json!({"is_prime": false, "label": null}),
                        ),
                    };
                    Ok(emit(p.json, "ideal", input_json(tail), result, text))
                }
                "minprimes" | "factor" => {
                    let [a] = tail else {
                        return Err(CliError::Usage(format!("usage: ideal -n N {sub} A")));
                    };
                    let ia = parse_antichain(n, a)?;
                    let labels = if sub == "minprimes" {
                        minimal_primes(&ia)?
                    } else {
                        factor_into_primes(&ia)?
                    };
                    Ok(emit(
                        p.json,
                        "ideal",
                        input_json(tail),
                        label_list_json(&labels),
                        label_list_text(&labels),
                    ))
                }
                "member" => {
                    let [expr, a] = tail else {
                        return Err(CliError::Usage(
                            "usage: ideal -n N member \"expr\" A".into(),
                        ));
                    };
                    let op = parse(n, expr)?.eval_operator(n)?;
                    let v = parse_antichain(n, a)?.membership(&op)?;
                    Ok(emit(
                        p.json,
                        "ideal",
                        input_json(tail),
                        Value::Bool(v),
                        v.to_string(),
                    ))
                }
                other => Err(CliError::Usage(format!("unknown ideal subcommand '{other}'"))),
            }
        }
        "dedekind" => {
            let p = scan_args(rest)?;
            let [ns] = need_args(&p, 1, "dedekind N")? else {
                unreachable!()
            };
            let n = nat_arg(ns, "arity")?;
            let count = enumerate_ideals(n)?.len();
            Ok(emit(
                p.json,
                "dedekind",
                json!({"arity": n}),
                json!(count),
                count.to_string(),
            ))
        }
        "spec" => {
            let p = scan_args(rest)?;
            let [ns] = need_args(&p, 1, "spec N")? else {
                unreachable!()
            };
            let n = nat_arg(ns, "arity")?;
            let labels = spectrum(n)?;
            let mut lines = Vec::new();
            let mut items = Vec::new();
            for l in &labels {
                let ideal = prime_from_subset(n, l)?;
                lines.push(format!("p{l} height {} {ideal}", l.len()));
                items.push(json!({
                    "label": l.to_string(),
                    "height": l.len(),
                    "antichain": ideal.to_string(),
                }));
            }
            Ok(emit(
                p.json,
                "spec",
                json!({"arity": n}),
                Value::Array(items),
                lines.join("\n"),
            ))
        }
        "chains" => {
            let p = scan_args(rest)?;
            let [ns, is_, js_] = need_args(&p, 3, "chains N I J")? else {
                unreachable!()
            };
            let n = nat_arg(ns, "arity")?;
            let pi = parse_subset(n, is_)?;
            let pj = parse_subset(n, js_)?;
            let (height, chains) = height_and_chains(n, &pi, &pj)?;
            let lines: Vec<String> = chains
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|l| l.to_string())
                        .collect::<Vec<_>>()
                        .join(" < ")
                })
                .collect();
            let result = json!({
                "height": height,
                "chains": chains
                    .iter()
                    .map(|c| Value::Array(
                        c.iter().map(|l| Value::String(l.to_string())).collect()
                    ))
                    .collect::<Vec<_>>(),
            });
            Ok(emit(
                p.json,
                "chains",
                json!({"arity": n, "from": is_, "to": js_}),
                result,
                lines.join("\n"),
            ))
        }
        "gk" => {
            let p = scan_args(rest)?;
            let [ns, imax_s] = need_args(&p, 2, "gk N IMAX")? else {
                unreachable!()
            };
            let n = nat_arg(ns, "arity")?;
            let i_max = nat_arg(imax_s, "i_max")?;
            let dims = filtration_dims(n, i_max)?;
            let lo = (i_max / 2).max(1);
            let slope = log_log_slope(&dims, lo, i_max);
            let dims_text = dims
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            let text = format!("dims: {dims_text}\nslope: {slope:.4}");
            Ok(emit(
                p.json,
                "gk",
                json!({"arity": n, "i_max": i_max}),
                json!({"dims": dims, "slope": slope}),
                text,
            ))
        }
        "check-relations" => {
            let p = scan_args(rest)?;
            let [ns] = need_args(&p, 1, "check-relations N")? else {
                unreachable!()
            };
            let n = nat_arg(ns, "arity")?;
            if n > 6 {
                return Err(CliError::Domain(format!(
                    "relation suite limited to arity 6, got {n}"
                )));
            }
            let (total, failures) = check_defining_relations(n)?;
            if !failures.is_empty() {
                return Err(CliError::Internal(format!(
                    "{} defining relations failed to normalize: {}",
                    failures.len(),
                    failures.join("; ")
                )));
            }
            Ok(emit(
                p.json,
                "check-relations",
                json!({"arity": n}),
                json!({"relations": total, "failures": []}),
                format!("ok: {total} relations"),
            ))
        }
        "selftest" => {
            let p = scan_args(rest)?;
            need_args(&p, 0, "selftest")?;
            let checks = selftest()?;
            Ok(emit(
                p.json,
                "selftest",
                json!({}),
                json!({"checks": checks, "failures": []}),
                format!("selftest ok ({checks} checks)"),
            ))
        }
        other => Err(CliError::Usage(format!(
            "unknown command '{other}'; try 'idop help'"
        ))),
    }
}

fn selftest_check(count: &mut usize, name: &str, ok: bool) -> Result<(), CliError> {
    *count += 1;
    if ok {
        Ok(())
    } else {
        Err(CliError::Internal(format!("selftest failed: {name}")))
    }
}

fn selftest() -> Result<usize, CliError> {
    let mut checks = 0usize;
    for n in 1..=3 {
        let (_, failures) = check_defining_relations(n)?;
        selftest_check(&mut checks, "defining relations", failures.is_empty())?;
    }
    let int_d = from_word(1, &[Gen::Int(1), Gen::Der(1)])?;
    selftest_check(
        &mut checks,
        "int d canonical form",
        print_canonical(&int_d) == "1 - e1[0,0]",
    )?;
    let d_int = from_word(1, &[Gen::Der(1), Gen::Int(1)])?;
    selftest_check(&mut checks, "d int = 1", d_int == Operator::one(1))?;
    for (n, want) in [(1usize, 3usize), (2, 6), (3, 20), (4, 168)] {
        selftest_check(
            &mut checks,
            "ideal count",
            enumerate_ideals(n)?.len() == want,
        )?;
    }
    let primes = enumerate_ideals(3)?
        .into_iter()
        .filter(|a| is_prime(a).is_some())
        .count();
    selftest_check(&mut checks, "spectrum size", primes == 8)?;
    let a = Operator::one(1).add(&Operator::mat_unit(1, 1, 0, 0)?)?;
    selftest_check(
        &mut checks,
        "unit inversion",
        matches!(is_unit(&a)?, UnitDecision::Yes(_)),
    )?;
    selftest_check(
        &mut checks,
        "int d is not a unit",
        is_unit(&int_d)? == UnitDecision::No,
    )?;
    let proj = project_bn(&int_d);
    selftest_check(&mut checks, "projection of int d", proj == idop::bn::BnElement::one(1))?;
    selftest_check(
        &mut checks,
        "zero oracle on d",
        !idop::poly::zero_oracle(1, &[Gen::Der(1)])?,
    )?;
    let f2 = IdealAc::finite_matrices(2);
    let min = minimal_primes(&f2)?;
    selftest_check(&mut checks, "minimal primes of F2", min.len() == 2)?;
    Ok(checks)
}
