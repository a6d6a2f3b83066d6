//! Command-line front end. One thin binary dispatches here; all the logic
//! stays in the library so the subcommands are testable in-process.
//!
//! Exit codes: 0 success, 1 certificate or computation failure, 2 usage
//! error.

use crate::fixtures::{self, Fixture};
use crate::forms::Bidegree;
use crate::group::{LinearCharacter, Representation};
use crate::invariant::FixedSpaceTable;
use crate::linalg::FpMatrix;
use crate::report::{run_reproduction, series_display, DEFAULT_MAX_DEGREE};
use crate::series::{molien, numerator_from_dims, rewrite_over_hsop, MolienConvention};
use crate::structure::{relation_extract, ASpan};
use crate::Fp;
use std::io::Write;

const USAGE: &str = "\
difforms: exact certification of the differential-form invariants of SL_2(F_3)

USAGE:
    difforms <SUBCOMMAND> [FLAGS]

SUBCOMMANDS:
    reproduce    run the full pipeline and emit a certification report
                 [--max-degree N] [--format text|json] [--out PATH] [--config PATH]
    invariants   print an echelon basis of one fixed space
                 --group G|H|Hbar [--character trivial|chi] --bidegree X,Y
    molien       print the Molien series of the acting image group
                 --group H|Hbar [--character trivial|chi] [--convention value|inverse]
    hilbert      reconstruct the Hilbert series from brute-force dimensions
                 --group G|H|Hbar [--character trivial|chi] [--max-degree N]
    relations    extract the covariant product relations
                 [--format text|json]

EXIT CODES:
    0 success, 1 certificate or computation failure, 2 usage error
";

pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(args, out) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}\n\n{USAGE}");
            2
        }
        Err(CliError::Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

enum CliError {
    Usage(String),
    Failure(String),
}

fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

fn failure<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Failure(msg.into()))
}

struct Flags {
    pairs: Vec<(String, String)>,
}

impl Flags {
    fn parse(args: &[String]) -> Result<Flags, CliError> {
        let mut pairs = Vec::new();
        let mut i = 0;
        while i < args.len() {
            let key = &args[i];
            if !key.starts_with("--") {
                return usage(format!("unexpected argument '{key}'"));
            }
            let Some(value) = args.get(i + 1) else {
                return usage(format!("flag '{key}' needs a value"));
            };
            pairs.push((key[2..].to_string(), value.clone()));
            i += 2;
        }
        Ok(Flags { pairs })
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.pairs.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    fn known(&self, allowed: &[&str]) -> Result<(), CliError> {
        for (k, _) in &self.pairs {
            if !allowed.contains(&k.as_str()) {
                return usage(format!("unknown flag '--{k}'"));
            }
        }
        Ok(())
    }
}

fn dispatch(args: &[String], out: &mut dyn Write) -> Result<i32, CliError> {
    let Some(cmd) = args.first() else {
        return usage("missing subcommand");
    };
    let rest = &args[1..];
    match cmd.as_str() {
        "reproduce" => cmd_reproduce(rest, out),
        "invariants" => cmd_invariants(rest, out),
        "molien" => cmd_molien(rest, out),
        "hilbert" => cmd_hilbert(rest, out),
        "relations" => cmd_relations(rest, out),
        "help" | "--help" | "-h" => {
            let _ = writeln!(out, "{USAGE}");
            Ok(0)
        }
        other => usage(format!("unknown subcommand '{other}'")),
    }
}

fn parse_max_degree(flags: &Flags) -> Result<u32, CliError> {
    match flags.get("max-degree") {
        None => Ok(DEFAULT_MAX_DEGREE),
        Some(s) => s
            .parse::<u32>()
            .map_err(|_| CliError::Usage(format!("bad --max-degree '{s}'"))),
    }
}

fn build_fixture(flags: &Flags) -> Result<(Fixture, bool), CliError> {
    match flags.get("config") {
        None => {
            let fx = Fixture::new().map_err(|e| CliError::Failure(e.to_string()))?;
            Ok((fx, true))
        }
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Failure(format!("cannot read config '{path}': {e}")))?;
            let cfg = parse_config(&text).map_err(CliError::Failure)?;
            let is_default = cfg.is_default();
            let fx = Fixture::from_parts(cfg.t, cfg.i, cfg.basis, cfg.chi)
                .map_err(|e| CliError::Failure(e.to_string()))?;
            Ok((fx, is_default))
        }
    }
}

/// Plain-text key/value fixture override. Matrices are row-major integer
/// lists mod p; unknown keys are rejected. Only characteristic 3 is
/// supported by the pipeline's named elements.
struct FixtureConfig {
    t: FpMatrix,
    i: FpMatrix,
    basis: [FpMatrix; 3],
    chi: [Fp; 2],
}

impl FixtureConfig {
    fn is_default(&self) -> bool {
        self.t == fixtures::gen_t()
            && self.i == fixtures::gen_i()
            && self.basis == fixtures::v_basis()
            && self.chi == [Fp::one(fixtures::P), Fp::new(-1, fixtures::P)]
    }
}

fn parse_config(text: &str) -> Result<FixtureConfig, String> {
    let mut cfg = FixtureConfig {
        t: fixtures::gen_t(),
        i: fixtures::gen_i(),
        basis: fixtures::v_basis(),
        chi: [Fp::one(fixtures::P), Fp::new(-1, fixtures::P)],
    };
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(format!("config line {}: expected 'key = value'", lineno + 1));
        };
        let key = key.trim();
        let ints: Result<Vec<i64>, _> =
            value.split_whitespace().map(|w| w.parse::<i64>()).collect();
        let ints = ints.map_err(|_| format!("config line {}: bad integer list", lineno + 1))?;
        let matrix2 = |ints: &[i64]| -> Result<FpMatrix, String> {
            if ints.len() != 4 {
                return Err(format!("config line {}: need 4 entries", lineno + 1));
            }
            Ok(FpMatrix::from_flat(fixtures::P, 2, 2, ints))
        };
        match key {
            "p" => {
                if ints != vec![fixtures::P as i64] {
                    return Err("only characteristic 3 is supported".to_string());
                }
            }
            "t" => cfg.t = matrix2(&ints)?,
            "i" => cfg.i = matrix2(&ints)?,
            "v1" => cfg.basis[0] = matrix2(&ints)?,
            "v2" => cfg.basis[1] = matrix2(&ints)?,
            "v3" => cfg.basis[2] = matrix2(&ints)?,
            "chi" => {
                if ints.len() != 2 || ints.iter().any(|&v| v % 3 == 0) {
                    return Err(format!(
                        "config line {}: chi needs two nonzero values",
                        lineno + 1
                    ));
                }
                cfg.chi = [Fp::new(ints[0], fixtures::P), Fp::new(ints[1], fixtures::P)];
            }
            other => return Err(format!("config line {}: unknown key '{other}'", lineno + 1)),
        }
    }
    Ok(cfg)
}

fn cmd_reproduce(args: &[String], out: &mut dyn Write) -> Result<i32, CliError> {
    let flags = Flags::parse(args)?;
    flags.known(&["max-degree", "format", "out", "config"])?;
    let max_degree = parse_max_degree(&flags)?;
    let format = flags.get("format").unwrap_or("text");
    if format != "text" && format != "json" {
        return usage(format!("bad --format '{format}'"));
    }
    let (fx, is_default) = build_fixture(&flags)?;
    let report = run_reproduction(&fx, max_degree, is_default);
    let rendered = match format {
        "json" => report.to_json(),
        _ => report.to_text(),
    };
    match flags.get("out") {
        None => {
            let _ = writeln!(out, "{rendered}");
        }
        Some(path) => {
            std::fs::write(path, rendered.as_bytes())
                .map_err(|e| CliError::Failure(format!("cannot write '{path}': {e}")))?;
            let _ = writeln!(
                out,
                "{} report written to {path}",
                if report.overall_pass { "PASS" } else { "FAIL" }
            );
        }
    }
    if let Some(name) = report.first_failure() {
        let _ = writeln!(out, "first failing certificate: {name}");
    }
    Ok(if report.overall_pass { 0 } else { 1 })
}

/// Group/character selections shared by the query subcommands.
enum GroupSel {
    G,
    H,
    Hbar,
}

fn parse_group(flags: &Flags) -> Result<GroupSel, CliError> {
    match flags.get("group") {
        Some("G") => Ok(GroupSel::G),
        Some("H") => Ok(GroupSel::H),
        Some("Hbar") => Ok(GroupSel::Hbar),
        Some(other) => usage(format!("unknown group '{other}' (expected G, H or Hbar)")),
        None => usage("missing --group"),
    }
}

fn parse_character(flags: &Flags) -> Result<bool, CliError> {
    match flags.get("character") {
        None | Some("trivial") => Ok(false),
        Some("chi") => Ok(true),
        Some(other) => usage(format!("unknown character '{other}' (expected trivial or chi)")),
    }
}

fn cmd_invariants(args: &[String], out: &mut dyn Write) -> Result<i32, CliError> {
    let flags = Flags::parse(args)?;
    flags.known(&["group", "character", "bidegree"])?;
    let group = parse_group(&flags)?;
    let chi = parse_character(&flags)?;
    let bd = match flags.get("bidegree") {
        Some(s) => {
            let parts: Vec<&str> = s.split(',').collect();
            let parsed: Option<(u32, u32)> = match parts.as_slice() {
                [x, y] => x.trim().parse().ok().zip(y.trim().parse().ok()),
                _ => None,
            };
            match parsed {
                Some((x, y)) if y <= fixtures::RANK as u32 => Bidegree::new(x, y),
                _ => return usage(format!("bad --bidegree '{s}' (expected X,Y with Y <= 3)")),
            }
        }
        None => return usage("missing --bidegree"),
    };
    let fx = Fixture::new().map_err(|e| CliError::Failure(e.to_string()))?;
    let mut table = match (group, chi) {
        (GroupSel::G, false) => FixedSpaceTable::new(&fx.g, &fx.rep_g, None),
        (GroupSel::G, true) => {
            return usage("character chi is defined on H, not on G");
        }
        (GroupSel::H, false) => FixedSpaceTable::new(&fx.h, &fx.rep_h, None),
        (GroupSel::H, true) => FixedSpaceTable::new(&fx.h, &fx.rep_h, Some(&fx.chi)),
        (GroupSel::Hbar, false) => {
            let rep = Representation::tautological(&fx.hbar);
            FixedSpaceTable::new(&fx.hbar, &rep, None)
        }
        (GroupSel::Hbar, true) => {
            let rep = Representation::tautological(&fx.hbar);
            FixedSpaceTable::new(&fx.hbar, &rep, Some(&fx.chibar))
        }
    };
    for f in &table.space(bd).basis {
        let _ = writeln!(out, "{f}");
    }
    Ok(0)
}

fn cmd_molien(args: &[String], out: &mut dyn Write) -> Result<i32, CliError> {
    let flags = Flags::parse(args)?;
    flags.known(&["group", "character", "convention"])?;
    let group = parse_group(&flags)?;
    let chi = parse_character(&flags)?;
    let convention = match flags.get("convention") {
        None | Some("value") => MolienConvention::CharacterValue,
        Some("inverse") => MolienConvention::CharacterInverse,
        Some(other) => return usage(format!("unknown convention '{other}'")),
    };
    let fx = Fixture::new().map_err(|e| CliError::Failure(e.to_string()))?;
    // the acting image on the 3-variable module
    let (image, character) = match (group, chi) {
        (GroupSel::G, false) => (&fx.gbar, LinearCharacter::trivial(&fx.gbar)),
        (GroupSel::G, true) => return usage("character chi is defined on H, not on G"),
        (_, false) => (&fx.hbar, LinearCharacter::trivial(&fx.hbar)),
        (_, true) => (&fx.hbar, fx.chibar.clone()),
    };
    let series =
        molien(image, &character, convention).map_err(|e| CliError::Failure(e.to_string()))?;
    // present over the squares hsop when the series is free over it
    match rewrite_over_hsop(&series, &[2, 2, 2]) {
        Ok(rw) => {
            let _ = writeln!(out, "{}", series_display(&rw.numerator, &[2, 2, 2]));
        }
        Err(_) => {
            let reduced = series.reduced();
            let _ = writeln!(out, "{reduced}");
        }
    }
    Ok(0)
}

fn cmd_hilbert(args: &[String], out: &mut dyn Write) -> Result<i32, CliError> {
    let flags = Flags::parse(args)?;
    flags.known(&["group", "character", "max-degree"])?;
    let group = parse_group(&flags)?;
    let chi = parse_character(&flags)?;
    let max_degree = parse_max_degree(&flags)?;
    let fx = Fixture::new().map_err(|e| CliError::Failure(e.to_string()))?;
    let (mut table, degrees): (FixedSpaceTable, Vec<u32>) = match (group, chi) {
        (GroupSel::G, false) => {
            (FixedSpaceTable::new(&fx.g, &fx.rep_g, None), fixtures::hsop_a_degrees())
        }
        (GroupSel::G, true) => return usage("character chi is defined on H, not on G"),
        (GroupSel::H, false) => (FixedSpaceTable::new(&fx.h, &fx.rep_h, None), vec![2, 2, 2]),
        (GroupSel::H, true) => {
            (FixedSpaceTable::new(&fx.h, &fx.rep_h, Some(&fx.chi)), vec![2, 2, 2])
        }
        (GroupSel::Hbar, false) => {
            let rep = Representation::tautological(&fx.hbar);
            (FixedSpaceTable::new(&fx.hbar, &rep, None), vec![2, 2, 2])
        }
        (GroupSel::Hbar, true) => {
            let rep = Representation::tautological(&fx.hbar);
            (FixedSpaceTable::new(&fx.hbar, &rep, Some(&fx.chibar)), vec![2, 2, 2])
        }
    };
    let dims = table.dims_row(0, max_degree);
    let num = numerator_from_dims(&dims, &degrees)
        .map_err(|e| CliError::Failure(e.to_string()))?;
    let _ = writeln!(out, "{}", series_display(&num, &degrees));
    Ok(0)
}

fn cmd_relations(args: &[String], out: &mut dyn Write) -> Result<i32, CliError> {
    let flags = Flags::parse(args)?;
    flags.known(&["format"])?;
    let format = flags.get("format").unwrap_or("text");
    let mut aspan = ASpan::new(&fixtures::hsop_a());
    let cs = fixtures::c_elements();
    let ds = fixtures::d_elements();
    let a_names = ["a1", "a2", "a3"];
    let mut json_records = Vec::new();
    let mut all_ok = true;
    for (li, ri) in [(0usize, 1usize), (0, 2), (1, 2)] {
        let label = format!("{}*{}", cs[li].0, cs[ri].0);
        let prod = cs[li].1.mul(&cs[ri].1);
        match relation_extract(&label, &prod, &ds, &mut aspan) {
            Ok(rec) => {
                let residual_zero = rec.rhs(&mut aspan, &ds) == prod;
                all_ok &= residual_zero;
                match format {
                    "json" => json_records.push(serde_json::json!({
                        "product": label,
                        "rhs": rec.format_rhs(&a_names),
                        "residual_zero": residual_zero,
                    })),
                    _ => {
                        let _ = writeln!(
                            out,
                            "{label} = {}   (residual {})",
                            rec.format_rhs(&a_names),
                            if residual_zero { "0" } else { "nonzero" }
                        );
                    }
                }
            }
            Err(e) => return failure(format!("relation extraction failed for {label}: {e}")),
        }
    }
    if format == "json" {
        let _ = writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&json_records).expect("records serialize")
        );
    }
    Ok(if all_ok { 0 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(&args, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn invariants_subcommand_prints_echelon_bases() {
        let (code, out, _) = run_capture(&["invariants", "--group", "G", "--bidegree", "2,0"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "x1^2+x2^2+x3^2");
        let (code, out, _) = run_capture(&[
            "invariants", "--group", "H", "--character", "chi", "--bidegree", "2,0",
        ]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "x2*x3");
        let (code, out, _) = run_capture(&["invariants", "--group", "G", "--bidegree", "1,0"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "");
    }

    #[test]
    fn molien_subcommand_displays_the_series() {
        let (code, out, _) =
            run_capture(&["molien", "--group", "Hbar", "--character", "chi"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "(t+t^2)/(1-t^2)^3");
        let (code, out, _) = run_capture(&["molien", "--group", "Hbar"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "(1+t^3)/(1-t^2)^3");
        // G is modular: computation failure, not usage error
        let (code, _, err) = run_capture(&["molien", "--group", "G"]);
        assert_eq!(code, 1);
        assert!(err.contains("modular"));
    }

    #[test]
    fn hilbert_subcommand_reconstructs_series() {
        let (code, out, _) = run_capture(&["hilbert", "--group", "G"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "(1+t^6)/((1-t^2)(1-t^3)(1-t^4))");
        let (code, out, _) =
            run_capture(&["hilbert", "--group", "H", "--character", "chi"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "(t+t^2)/(1-t^2)^3");
    }

    #[test]
    fn relations_subcommand_reports_residual_zero() {
        let (code, out, _) = run_capture(&["relations"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.trim().lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines.iter().all(|l| l.contains("(residual 0)")));
        assert!(lines[0].starts_with("c1*c2 = "));
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_capture(&[]).0, 2);
        assert_eq!(run_capture(&["bogus"]).0, 2);
        assert_eq!(run_capture(&["invariants", "--group", "Q", "--bidegree", "1,0"]).0, 2);
        assert_eq!(run_capture(&["invariants", "--group", "G"]).0, 2);
        assert_eq!(run_capture(&["invariants", "--group", "G", "--bidegree", "1,9"]).0, 2);
        assert_eq!(run_capture(&["molien", "--group", "G", "--character", "chi"]).0, 2);
        assert_eq!(run_capture(&["reproduce", "--format", "yaml"]).0, 2);
        assert_eq!(run_capture(&["reproduce", "--max-degree", "x"]).0, 2);
    }

    #[test]
    fn reproduce_text_and_json_at_low_degree() {
        let (code, out, _) = run_capture(&["reproduce", "--max-degree", "4"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("PASS overall"));
        let (code, out, _) =
            run_capture(&["reproduce", "--max-degree", "4", "--format", "json"]);
        assert_eq!(code, 0);
        assert!(out.contains("\"schema\": 1"));
        assert!(out.contains("\"overall_pass\": true"));
    }

    #[test]
    fn config_override_roundtrips_the_defaults() {
        let dir = std::env::temp_dir().join("difforms-config-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("default.cfg");
        std::fs::write(
            &path,
            "# the built-in fixture, spelled out\np = 3\nt = 1 1 0 1\ni = 0 1 -1 0\nchi = 1 -1\n",
        )
        .unwrap();
        let (code, out, _) = run_capture(&[
            "reproduce",
            "--max-degree",
            "3",
            "--config",
            path.to_str().unwrap(),
        ]);
        assert_eq!(code, 0, "{out}");
        // a broken config errors out cleanly
        let bad = dir.join("bad.cfg");
        std::fs::write(&bad, "t = 1 0 0 0\n").unwrap();
        let (code, _, err) =
            run_capture(&["reproduce", "--config", bad.to_str().unwrap()]);
        assert_eq!(code, 1);
        assert!(err.contains("not invertible"), "{err}");
    }
}
