use std::process::{Command, Output};

use brauer_cli::ast::Var;
use brauer_cli::parse::parse;
use brauer_cli::{Command as Cmd, Residue, Session};

fn brauer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_brauer"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn session(command: Cmd, p: u32, residue: Residue) -> Session {
    Session {
        command,
        p,
        q: None,
        residue,
        prec: None,
        inner_prec: None,
    }
}

fn golden_inputs() -> Vec<String> {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let mut out = Vec::new();
    for entry in std::fs::read_dir(dir).unwrap() {
        let text = std::fs::read_to_string(entry.unwrap().path()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        out.push(v["input"].as_str().unwrap().to_string());
    }
    out.sort();
    out
}

#[test]
fn golden_inputs_roundtrip_through_the_printer() {
    let all = [Var::X, Var::S, Var::T, Var::Pi, Var::W];
    let inputs = golden_inputs();
    assert_eq!(inputs.len(), 10);
    for s in inputs {
        let a = parse(&s, &all).unwrap();
        let printed = a.to_string();
        assert_eq!(parse(&printed, &all).unwrap(), a, "{s}");
        // reports carry the canonical print, so it is a fixed point
        assert_eq!(printed, s);
    }
}

#[test]
fn spec_style_examples() {
    let r = session(Cmd::Sw, 2, Residue::RatFunc).run("sym(x/t^2; t)").unwrap();
    assert_eq!(r.sw, Some(2));
    assert_eq!(r.zero_status.as_deref(), Some("NonZero"));
    let r = session(Cmd::NormalForm, 2, Residue::RatFunc).run("sym(x/t^2; t)").unwrap();
    let nf = r.normal_form.unwrap();
    assert_eq!((nf.kind.as_str(), nf.a.as_deref(), nf.b.as_deref()), ("II", Some("x*t^-2"), Some("t")));
    assert_eq!(r.certificate_status.as_deref(), Some("Valid"));
    let mut s = session(Cmd::Local2d, 3, Residue::Fq);
    s.q = Some(3);
    let r = s.run("sym(pi/t^2; t)").unwrap();
    assert_eq!(r.extras.pi_symbol.as_deref(), Some("sym(2*pi*t^-2; pi)"));
    assert_eq!(r.obstruction, None);
    let r = s.run("sym(1 + 1/t; t)").unwrap();
    assert_eq!(r.obstruction.as_deref(), Some("sym(1; t)"));
}

#[test]
fn exit_codes() {
    let ok = brauer(&["sw", "--p", "2", "sym(x/t^2; t)"]);
    assert_eq!(ok.status.code(), Some(0));
    let parse = brauer(&["sw", "--p", "2", "sym(x/t^2; t"]);
    assert_eq!(parse.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&parse.stderr).contains("at 12"));
    let unknown = brauer(&["sw", "--p", "2", "--residue", "fq", "sym(x; t)"]);
    assert_eq!(unknown.status.code(), Some(2));
    let pre = brauer(&["local2d", "--p", "2", "sym(pi/t^3; t)"]);
    assert_eq!(pre.status.code(), Some(3));
    let pre = brauer(&["local2d", "--p", "3", "sym(1/t; pi)"]);
    assert_eq!(pre.status.code(), Some(3));
    let lvl = brauer(&["sw", "--p", "2", "sym(w2(x, 0); t)"]);
    assert_eq!(lvl.status.code(), Some(3));
    let prec = brauer(&["sw", "--p", "2", "--prec", "4", "sym(1/(t^5 + t^6); t)"]);
    assert_eq!(prec.status.code(), Some(4));
    let bad_q = brauer(&["sw", "--p", "2", "--q", "6", "dlog(t)"]);
    assert_eq!(bad_q.status.code(), Some(1));
}

#[test]
fn output_is_deterministic() {
    let args = ["per-ind", "--p", "3", "--residue", "local", "sym(1/(s*t^3); t) + sym(s^-1; s)"];
    let a = brauer(&args);
    let b = brauer(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn batch_preserves_order() {
    let dir = std::env::temp_dir().join(format!("brauer-batch-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let inputs: Vec<String> = (1..=12).map(|j| format!("sym(x/t^{j}; t)")).collect();
    let path = dir.join("in.txt");
    std::fs::write(&path, format!("# poles 1..12\n{}\n\n", inputs.join("\n"))).unwrap();
    let out = brauer(&["sw", "--p", "3", "--batch", path.to_str().unwrap()]);
    assert!(out.status.success());
    let lines: Vec<serde_json::Value> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), inputs.len());
    for (l, s) in lines.iter().zip(&inputs) {
        assert_eq!(l["input"].as_str().unwrap(), s);
    }
    // [x/t^j, t) has sw = j over F_3(x)
    let sws: Vec<i64> = lines.iter().map(|l| l["sw"].as_i64().unwrap()).collect();
    assert_eq!(sws, (1..=12).collect::<Vec<_>>());
    let direct = session(Cmd::Sw, 3, Residue::RatFunc).run_batch(&inputs);
    assert!(direct.iter().all(|r| r.is_ok()));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn text_format_drops_nulls() {
    let out = brauer(&["is-zero", "--p", "2", "--format", "text", "d(x*t)"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("zero_status: Zero"));
    assert!(!text.contains("null"));
}

#[test]
fn json_field_order_is_fixed() {
    let r = session(Cmd::PerInd, 2, Residue::RatFunc).run("sym(x/t^2; t)").unwrap();
    let json = r.to_json();
    let keys = [
        "\"command\"",
        "\"context\"",
        "\"input\"",
        "\"sw\"",
        "\"zero_status\"",
        "\"normal_form\"",
        "\"per\"",
        "\"ind\"",
        "\"splitting\"",
        "\"obstruction\"",
        "\"certificate_status\"",
        "\"assumptions\"",
    ];
    let pos: Vec<usize> = keys.iter().map(|k| json.find(k).unwrap()).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]), "{json}");
}
