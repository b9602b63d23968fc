//! Line-oriented circuit text format.
//!
//! ```text
//! # comment
//! dim 3
//! qvs 2
//! variant E            # or checkE, hybrid:<d_a>
//! init 0 +1            # per QV: |q⟩ or |+_q⟩
//! gate F 0
//! gate P 1 0           # P(p) on target
//! gate X 2 0
//! gate Z 1 0
//! gate CZ 0 1
//! gate R 0 [0.0,0.3,1.1]
//! gate D3 1 0 one      # D₃(q') on target, constant cube (default) or one
//! measure 1
//! force 2,0,1
//! seed 42
//! ```

use std::fmt::Write as _;

use crate::adqc::Interaction;
use crate::circuit::{Circuit, LogicalGate, LogicalOp};
use crate::gates::{CubicConstant, PhaseFunction};

use super::HarnessError;

/// Per-QV product input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitQv {
    Basis(usize),
    Plus(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CircuitFile {
    pub circuit: Circuit,
    pub variant: Interaction,
    pub init: Vec<InitQv>,
    pub force: Vec<usize>,
    pub seed: Option<u64>,
}

impl CircuitFile {
    pub fn new(circuit: Circuit) -> Self {
        let n = circuit.n();
        Self { circuit, variant: Interaction::E, init: vec![InitQv::Basis(0); n], force: Vec::new(), seed: None }
    }
}

fn err(line: usize, msg: impl Into<String>) -> HarnessError {
    HarnessError::Parse { line, msg: msg.into() }
}

fn num<T: std::str::FromStr>(tok: &str, what: &str, line: usize) -> Result<T, HarnessError> {
    tok.parse().map_err(|_| err(line, format!("expected {what}, found `{tok}`")))
}

fn arity(args: &[&str], n: usize, what: &str, line: usize) -> Result<(), HarnessError> {
    if args.len() != n {
        return Err(err(line, format!("{what} takes {n} argument(s), found {}", args.len())));
    }
    Ok(())
}

fn parse_table(text: &str, d: usize, line: usize) -> Result<PhaseFunction, HarnessError> {
    let inner = text
        .trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| err(line, format!("phase table must be `[a,b,...]`, found `{text}`")))?;
    let vals = inner
        .split(',')
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(|s| num::<f64>(s, "a real number", line))
        .collect::<Result<Vec<f64>, _>>()?;
    if let Some(v) = vals.iter().find(|v| !v.is_finite()) {
        return Err(err(line, format!("non-finite phase {v}")));
    }
    if vals.len() != d {
        return Err(err(line, format!("phase table has {} entries, dim is {d}", vals.len())));
    }
    PhaseFunction::new(vals).map_err(|e| err(line, e.to_string()))
}

fn parse_gate(args: &[&str], d: usize, line: usize) -> Result<LogicalGate, HarnessError> {
    let (name, rest) = args.split_first().ok_or_else(|| err(line, "gate needs a name"))?;
    // P(p) has period 2d in even dimension
    let label = |s: &str, what: &str, bound: usize| -> Result<usize, HarnessError> {
        let v: usize = num(s, what, line)?;
        if v >= bound {
            return Err(err(line, format!("{what} {v} out of range (must be below {bound})")));
        }
        Ok(v)
    };
    let g = match *name {
        "F" => {
            arity(rest, 1, "F", line)?;
            LogicalGate::F { t: num(rest[0], "a QV index", line)? }
        }
        "P" | "X" | "Z" => {
            arity(rest, 2, name, line)?;
            let p = label(rest[0], "parameter", if *name == "P" { 2 * d } else { d })?;
            let t = num(rest[1], "a QV index", line)?;
            match *name {
                "P" => LogicalGate::P { p, t },
                "X" => LogicalGate::X { q: p, t },
                _ => LogicalGate::Z { q: p, t },
            }
        }
        "CZ" => {
            arity(rest, 2, "CZ", line)?;
            LogicalGate::Cz { a: num(rest[0], "a QV index", line)?, b: num(rest[1], "a QV index", line)? }
        }
        "R" => {
            if rest.len() < 2 {
                return Err(err(line, "R takes a target and a phase table"));
            }
            let t = num(rest[0], "a QV index", line)?;
            LogicalGate::R { t, theta: parse_table(&rest[1..].join(""), d, line)? }
        }
        "D3" => {
            if rest.len() != 2 && rest.len() != 3 {
                return Err(err(line, format!("D3 takes 2 or 3 arguments, found {}", rest.len())));
            }
            let qp = label(rest[0], "parameter", d)?;
            let t = num(rest[1], "a QV index", line)?;
            let c = match rest.get(2) {
                None | Some(&"cube") => CubicConstant::Cube,
                Some(&"one") => CubicConstant::One,
                Some(other) => return Err(err(line, format!("cubic constant must be `cube` or `one`, found `{other}`"))),
            };
            LogicalGate::D3 { qp, t, c }
        }
        other => return Err(err(line, format!("unknown gate `{other}`"))),
    };
    Ok(g)
}

fn parse_variant(tok: &str, line: usize) -> Result<Interaction, HarnessError> {
    match tok {
        "E" => Ok(Interaction::E),
        "checkE" => Ok(Interaction::CheckE),
        _ => match tok.strip_prefix("hybrid:") {
            Some(k) => {
                let d_a: usize = num(k, "an ancilla dimension", line)?;
                if d_a < 2 {
                    return Err(err(line, format!("ancilla dimension {d_a} < 2")));
                }
                Ok(Interaction::Hybrid { d_a })
            }
            None => Err(err(line, format!("unknown variant `{tok}`"))),
        },
    }
}

fn parse_init(args: &[&str], n: usize, d: usize, line: usize) -> Result<Vec<InitQv>, HarnessError> {
    arity(args, n, "init", line)?;
    args.iter()
        .map(|tok| {
            let (plus, digits) = match tok.strip_prefix('+') {
                Some(rest) => (true, rest),
                None => (false, *tok),
            };
            let q: usize = num(digits, "a basis label", line)?;
            if q >= d {
                return Err(err(line, format!("basis label {q} out of range for dim {d}")));
            }
            Ok(if plus { InitQv::Plus(q) } else { InitQv::Basis(q) })
        })
        .collect()
}

fn parse_force(args: &[&str], line: usize) -> Result<Vec<usize>, HarnessError> {
    args.join("")
        .split(',')
        .filter(|s| !s.is_empty())
        .map(|s| num(s, "an outcome", line))
        .collect()
}

pub fn parse_circuit(text: &str) -> Result<CircuitFile, HarnessError> {
    let mut d: Option<usize> = None;
    let mut n: Option<usize> = None;
    let mut variant = None;
    let mut init = None;
    let mut force = None;
    let mut seed = None;
    let mut circuit: Option<Circuit> = None;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        let (kw, args) = (toks[0], &toks[1..]);
        let once = |seen: bool| if seen { Err(err(line, format!("duplicate `{kw}`"))) } else { Ok(()) };
        match kw {
            "dim" => {
                once(d.is_some())?;
                arity(args, 1, "dim", line)?;
                let v: usize = num(args[0], "a dimension", line)?;
                if v < 2 {
                    return Err(err(line, format!("dim {v} < 2")));
                }
                d = Some(v);
            }
            "qvs" => {
                once(n.is_some())?;
                arity(args, 1, "qvs", line)?;
                n = Some(num(args[0], "a QV count", line)?);
            }
            "variant" => {
                once(variant.is_some())?;
                arity(args, 1, "variant", line)?;
                variant = Some(parse_variant(args[0], line)?);
            }
            "seed" => {
                once(seed.is_some())?;
                arity(args, 1, "seed", line)?;
                seed = Some(num(args[0], "a seed", line)?);
            }
            "force" => {
                once(force.is_some())?;
                if args.is_empty() {
                    return Err(err(line, "force needs at least one outcome"));
                }
                force = Some(parse_force(args, line)?);
            }
            "init" | "gate" | "measure" => {
                let (dv, nv) = match (d, n) {
                    (Some(dv), Some(nv)) => (dv, nv),
                    _ => return Err(err(line, format!("`{kw}` before `dim` and `qvs`"))),
                };
                let c = match circuit.as_mut() {
                    Some(c) => c,
                    None => circuit.insert(Circuit::new(dv, nv).map_err(|e| err(line, e.to_string()))?),
                };
                match kw {
                    "init" => {
                        once(init.is_some())?;
                        if !c.ops().is_empty() {
                            return Err(err(line, "`init` must come before gate and measure lines"));
                        }
                        init = Some(parse_init(args, nv, dv, line)?);
                    }
                    "gate" => c.push_gate(parse_gate(args, dv, line)?).map_err(|e| err(line, e.to_string()))?,
                    _ => {
                        arity(args, 1, "measure", line)?;
                        c.push_measure(num(args[0], "a QV index", line)?).map_err(|e| err(line, e.to_string()))?;
                    }
                }
            }
            other => return Err(err(line, format!("unknown keyword `{other}`"))),
        }
    }

    let last = text.lines().count().max(1);
    let (d, n) = match (d, n) {
        (Some(d), Some(n)) => (d, n),
        (None, _) => return Err(err(last, "missing `dim`")),
        (_, None) => return Err(err(last, "missing `qvs`")),
    };
    let circuit = match circuit {
        Some(c) => c,
        None => Circuit::new(d, n).map_err(|e| err(last, e.to_string()))?,
    };
    Ok(CircuitFile {
        circuit,
        variant: variant.unwrap_or(Interaction::E),
        init: init.unwrap_or_else(|| vec![InitQv::Basis(0); n]),
        force: force.unwrap_or_default(),
        seed,
    })
}

/// Canonical text form; `parse_circuit(&serialize_circuit(f)) == f`.
pub fn serialize_circuit(file: &CircuitFile) -> String {
    let c = &file.circuit;
    let mut s = String::new();
    let _ = writeln!(s, "dim {}", c.d());
    let _ = writeln!(s, "qvs {}", c.n());
    match file.variant {
        Interaction::E => {}
        Interaction::CheckE => s.push_str("variant checkE\n"),
        Interaction::Hybrid { d_a } => {
            let _ = writeln!(s, "variant hybrid:{d_a}");
        }
    }
    if let Some(seed) = file.seed {
        let _ = writeln!(s, "seed {seed}");
    }
    if !file.force.is_empty() {
        let f: Vec<String> = file.force.iter().map(|m| m.to_string()).collect();
        let _ = writeln!(s, "force {}", f.join(","));
    }
    if file.init.iter().any(|q| *q != InitQv::Basis(0)) {
        let toks: Vec<String> = file
            .init
            .iter()
            .map(|q| match q {
                InitQv::Basis(q) => q.to_string(),
                InitQv::Plus(q) => format!("+{q}"),
            })
            .collect();
        let _ = writeln!(s, "init {}", toks.join(" "));
    }
    for op in c.ops() {
        let _ = match op {
            LogicalOp::Measure(t) => writeln!(s, "measure {t}"),
            LogicalOp::Gate(g) => match g {
                LogicalGate::F { t } => writeln!(s, "gate F {t}"),
                LogicalGate::P { p, t } => writeln!(s, "gate P {p} {t}"),
                LogicalGate::X { q, t } => writeln!(s, "gate X {q} {t}"),
                LogicalGate::Z { q, t } => writeln!(s, "gate Z {q} {t}"),
                LogicalGate::Cz { a, b } => writeln!(s, "gate CZ {a} {b}"),
                LogicalGate::R { t, theta } => {
                    // `{:?}` on f64 is the shortest round-trip form
                    let vals: Vec<String> = theta.table().iter().map(|v| format!("{v:?}")).collect();
                    writeln!(s, "gate R {t} [{}]", vals.join(","))
                }
                LogicalGate::D3 { qp, t, c } => match c {
                    CubicConstant::Cube => writeln!(s, "gate D3 {qp} {t}"),
                    CubicConstant::One => writeln!(s, "gate D3 {qp} {t} one"),
                },
            },
        };
    }
    s
}
