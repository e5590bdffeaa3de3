//! Command-line front end.
//!
//! Verbs map one-to-one onto library operations: `generate`, `verify`,
//! `analyze`, `decompose`, `canonicalize`, `equivalent`, `feasible`,
//! `tradeoff`. Matrices are read from a `FILE` argument or standard
//! input in the text or JSON encodings of [`crate::io`].
//!
//! Exit status separates mathematical verdicts from operational
//! failures: 0 for success or a "yes" verdict, 1 for a clean "no"
//! (`verify` on a non-orthogonal matrix, `equivalent` on inequivalent
//! designs, `feasible` with no solutions), 2 for usage, parse, or
//! library errors. Output is deterministic for fixed input: the only
//! randomness is the `--seed`ed scramble, which is a fixed function of
//! the seed.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::cod::{CodMatrix, CodVerdict};
use crate::generators::{gen_g, gen_gw, gen_h, gen_hm};
use crate::io::{self, MatrixFormat};
use crate::params::{feasible, tradeoff_table, Rational, TradeoffRow};
use crate::structure::{
    canonicalize_atomic, classify_atomic, decompose_atomic, equivalent, scramble,
};
use crate::{CodError, Result};

const EXIT_OK: i32 = 0;
const EXIT_NO: i32 = 1;
const EXIT_ERR: i32 = 2;

const USAGE: &str = "codforge <verb> [--family G|Gw|H|Hm] [--n INT] [--w INT] [--p INT] \
                     [--k INT] [--format text|json|csv|latex] [--seed INT] [FILE]";

#[derive(Debug, Parser)]
#[command(name = "codforge", version, override_usage = USAGE)]
#[command(about = "Construct, verify, and classify complex orthogonal designs")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Debug, Subcommand)]
enum Verb {
    /// Construct a generator matrix, optionally scrambled by seeded
    /// random equivalence operations
    Generate(GenerateArgs),
    /// Check orthogonality of a matrix read from FILE or standard input
    Verify(VerifyArgs),
    /// Report size, orthogonality, type, separation, zero patterns, and
    /// signature of a matrix
    Analyze(InputArgs),
    /// Split a design into its atomic parts
    Decompose(FormattedInputArgs),
    /// Rewrite an atomic design into its generator form, with the
    /// transcript of equivalence operations used
    Canonicalize(FormattedInputArgs),
    /// Decide whether two designs are equivalent
    Equivalent(EquivalentArgs),
    /// Enumerate the atomic compositions attaining given parameters
    Feasible(FeasibleArgs),
    /// Print the rate/delay trade-off table for a column count
    Tradeoff(TradeoffArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "verbatim")]
enum Family {
    G,
    Gw,
    H,
    Hm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Text,
    Json,
    Csv,
    Latex,
}

impl From<OutFormat> for MatrixFormat {
    fn from(f: OutFormat) -> MatrixFormat {
        match f {
            OutFormat::Text => MatrixFormat::Text,
            OutFormat::Json => MatrixFormat::Json,
            OutFormat::Csv => MatrixFormat::Csv,
            OutFormat::Latex => MatrixFormat::Latex,
        }
    }
}

#[derive(Debug, Args)]
struct GenerateArgs {
    /// Generator family
    #[arg(long, value_enum, ignore_case = true)]
    family: Family,
    /// Number of columns
    #[arg(long)]
    n: usize,
    /// Weight parameter (family Gw only)
    #[arg(long, allow_hyphen_values = true)]
    w: Option<i64>,
    /// Scramble the output with this many seeded random equivalence
    /// operations before printing [default: 16]
    #[arg(long, requires = "seed")]
    scramble: Option<usize>,
    /// Seed for the scramble; omitting it prints the generator as is
    #[arg(long)]
    seed: Option<u64>,
    /// Output format
    #[arg(long, value_enum, default_value_t = OutFormat::Text)]
    format: OutFormat,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Input format (text or json; detected when omitted)
    #[arg(long, value_enum)]
    format: Option<OutFormat>,
    /// Input file (standard input when omitted)
    file: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Input file (standard input when omitted)
    file: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct FormattedInputArgs {
    /// Output format (text or json)
    #[arg(long, value_enum, default_value_t = OutFormat::Text)]
    format: OutFormat,
    /// Input file (standard input when omitted)
    file: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EquivalentArgs {
    /// First design
    first: PathBuf,
    /// Second design (standard input when omitted)
    second: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct FeasibleArgs {
    /// Decoding delay (row count)
    #[arg(long)]
    p: u64,
    /// Number of columns
    #[arg(long)]
    n: usize,
    /// Number of variables
    #[arg(long)]
    k: u64,
    /// Output format (text or json)
    #[arg(long, value_enum, default_value_t = OutFormat::Text)]
    format: OutFormat,
}

#[derive(Debug, Args)]
struct TradeoffArgs {
    /// Number of columns
    #[arg(long)]
    n: usize,
    /// Output format
    #[arg(long, value_enum, default_value_t = OutFormat::Text)]
    format: OutFormat,
}

/// Runs the command line given as `argv` (program name first), writing
/// to the supplied streams, and returns the process exit status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return e.exit_code();
        }
    };
    let outcome = match &cli.verb {
        Verb::Generate(a) => cmd_generate(a, out),
        Verb::Verify(a) => cmd_verify(a, out),
        Verb::Analyze(a) => cmd_analyze(a, out),
        Verb::Decompose(a) => cmd_decompose(a, out),
        Verb::Canonicalize(a) => cmd_canonicalize(a, out),
        Verb::Equivalent(a) => cmd_equivalent(a, out),
        Verb::Feasible(a) => cmd_feasible(a, out),
        Verb::Tradeoff(a) => cmd_tradeoff(a, out),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERR
        }
    }
}

fn read_input(path: Option<&Path>) -> Result<String> {
    match path {
        Some(p) => std::fs::read_to_string(p)
            .map_err(|e| CodError::InvalidArgument(format!("cannot read {}: {e}", p.display()))),
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CodError::InvalidArgument(format!("cannot read standard input: {e}")))?;
            Ok(buf)
        }
    }
}

fn parse_input(format: Option<OutFormat>, input: &str) -> Result<CodMatrix> {
    match format {
        None => io::parse_auto(input),
        Some(OutFormat::Text) => io::parse_text(input),
        Some(OutFormat::Json) => io::parse_json(input),
        Some(other) => Err(CodError::InvalidArgument(format!(
            "matrices are read in the text or json formats, not {other:?}"
        ))),
    }
}

fn write_matrix(m: &CodMatrix, format: OutFormat, out: &mut dyn Write) {
    let s = io::serialize(m, format.into());
    let _ = write!(out, "{s}");
    if !s.ends_with('\n') {
        let _ = writeln!(out);
    }
}

fn join_numbers<T: std::fmt::Display>(xs: &[T]) -> String {
    xs.iter()
        .map(T::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn cmd_generate(a: &GenerateArgs, out: &mut dyn Write) -> Result<i32> {
    if a.w.is_some() && a.family != Family::Gw {
        return Err(CodError::InvalidArgument(
            "--w applies only to --family Gw".to_string(),
        ));
    }
    let m = match a.family {
        Family::G => gen_g(a.n)?,
        Family::Gw => {
            let w = a.w.ok_or_else(|| {
                CodError::InvalidArgument("--family Gw requires --w".to_string())
            })?;
            gen_gw(a.n, w)?
        }
        Family::H => gen_h(a.n)?,
        Family::Hm => gen_hm(a.n)?,
    };
    let m = match a.seed {
        Some(seed) => scramble(&m, seed, a.scramble.unwrap_or(16)).0,
        None => m,
    };
    write_matrix(&m, a.format, out);
    Ok(EXIT_OK)
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let input = read_input(a.file.as_deref())?;
    let m = parse_input(a.format, &input)?;
    if m.is_cod() {
        let _ = writeln!(out, "COD: yes");
        Ok(EXIT_OK)
    } else {
        let _ = writeln!(out, "COD: no");
        Ok(EXIT_NO)
    }
}

fn cmd_analyze(a: &InputArgs, out: &mut dyn Write) -> Result<i32> {
    let input = read_input(a.file.as_deref())?;
    let m = io::parse_auto(&input)?;
    let _ = writeln!(out, "size: {} x {}", m.p(), m.n());
    let _ = writeln!(out, "variables: {}", m.k());
    let verdict = m.check_cod();
    let _ = writeln!(out, "cod: {}", yes_no(verdict.is_cod()));
    if let CodVerdict::NotCod { col_a, col_b, .. } = verdict {
        let _ = writeln!(out, "first failing gram cell: ({col_a}, {col_b})");
        return Ok(EXIT_OK);
    }
    let _ = writeln!(out, "parameters: [{}, {}, {}]", m.p(), m.n(), m.k());
    let _ = writeln!(out, "rate: {}", Rational::new(m.k() as u128, m.p() as u128));
    let _ = writeln!(out, "first type: {}", yes_no(m.is_first_type()?));
    let _ = writeln!(
        out,
        "conjugation separated: {}",
        yes_no(m.is_conjugation_separated())
    );
    let mut patterns = std::collections::BTreeMap::new();
    for r in 1..=m.p() {
        *patterns.entry(m.zero_pattern(r)).or_insert(0usize) += 1;
    }
    let _ = writeln!(out, "zero patterns: {} distinct", patterns.len());
    if patterns.len() <= 32 {
        for (pat, count) in &patterns {
            let _ = writeln!(out, "  {pat}: {count}");
        }
    }
    match crate::structure::signature(&m) {
        Ok(sig) => {
            let _ = writeln!(out, "signature: {sig}");
        }
        Err(CodError::Unsupported(_)) => {
            let _ = writeln!(out, "signature: unavailable (not first type)");
        }
        Err(CodError::Unclassifiable { .. }) => {
            let _ = writeln!(out, "signature: unavailable (unclassifiable part)");
        }
        Err(e) => return Err(e),
    }
    Ok(EXIT_OK)
}

fn cmd_decompose(a: &FormattedInputArgs, out: &mut dyn Write) -> Result<i32> {
    let input = read_input(a.file.as_deref())?;
    let m = io::parse_auto(&input)?;
    let parts = decompose_atomic(&m)?;
    match a.format {
        OutFormat::Text => {
            let _ = writeln!(out, "parts: {}", parts.len());
            for (i, part) in parts.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "part {}: rows {:?}, vars {:?}, class {}, parameters [{}, {}, {}]",
                    i + 1,
                    part.rows,
                    part.vars,
                    part.class,
                    part.matrix.p(),
                    part.matrix.n(),
                    part.matrix.k()
                );
                for line in io::serialize(&part.matrix, MatrixFormat::Text).lines() {
                    let _ = writeln!(out, "  {line}");
                }
            }
        }
        OutFormat::Json => {
            let body: Vec<String> = parts
                .iter()
                .map(|part| {
                    format!(
                        "{{\"rows\":[{}],\"vars\":[{}],\"class\":\"{}\",\"matrix\":{}}}",
                        join_numbers(&part.rows),
                        join_numbers(&part.vars),
                        part.class,
                        io::serialize(&part.matrix, MatrixFormat::Json)
                    )
                })
                .collect();
            let _ = writeln!(out, "{{\"parts\":[{}]}}", body.join(","));
        }
        other => {
            return Err(CodError::InvalidArgument(format!(
                "decompose prints text or json, not {other:?}"
            )))
        }
    }
    Ok(EXIT_OK)
}

fn cmd_canonicalize(a: &FormattedInputArgs, out: &mut dyn Write) -> Result<i32> {
    let input = read_input(a.file.as_deref())?;
    let m = io::parse_auto(&input)?;
    let (canon, ops) = canonicalize_atomic(&m)?;
    let op_strings: Vec<String> = ops.iter().map(|op| op.to_string()).collect();
    match a.format {
        OutFormat::Text => {
            let _ = writeln!(out, "class: {}", classify_atomic(&canon));
            if op_strings.is_empty() {
                let _ = writeln!(out, "ops: (none)");
            } else {
                let _ = writeln!(out, "ops: {}", op_strings.join(", "));
            }
            let _ = writeln!(out);
            write_matrix(&canon, OutFormat::Text, out);
        }
        OutFormat::Json => {
            let quoted: Vec<String> = op_strings.iter().map(|s| format!("\"{s}\"")).collect();
            let _ = writeln!(
                out,
                "{{\"class\":\"{}\",\"ops\":[{}],\"matrix\":{}}}",
                classify_atomic(&canon),
                quoted.join(","),
                io::serialize(&canon, MatrixFormat::Json)
            );
        }
        other => {
            return Err(CodError::InvalidArgument(format!(
                "canonicalize prints text or json, not {other:?}"
            )))
        }
    }
    Ok(EXIT_OK)
}

fn cmd_equivalent(a: &EquivalentArgs, out: &mut dyn Write) -> Result<i32> {
    let first = io::parse_auto(&read_input(Some(&a.first))?)?;
    let second = io::parse_auto(&read_input(a.second.as_deref())?)?;
    if equivalent(&first, &second)? {
        let _ = writeln!(out, "equivalent: yes");
        Ok(EXIT_OK)
    } else {
        let _ = writeln!(out, "equivalent: no");
        Ok(EXIT_NO)
    }
}

fn cmd_feasible(a: &FeasibleArgs, out: &mut dyn Write) -> Result<i32> {
    let sols = feasible(a.p, a.n, a.k)?;
    match a.format {
        OutFormat::Text => {
            if sols.is_empty() {
                let _ = writeln!(out, "infeasible");
            } else {
                for sol in &sols {
                    let _ = writeln!(out, "{sol}");
                }
            }
        }
        OutFormat::Json => {
            let body: Vec<String> = sols.iter().map(|s| s.to_json()).collect();
            let _ = writeln!(out, "{{\"solutions\":[{}]}}", body.join(","));
        }
        other => {
            return Err(CodError::InvalidArgument(format!(
                "feasible prints text or json, not {other:?}"
            )))
        }
    }
    Ok(if sols.is_empty() { EXIT_NO } else { EXIT_OK })
}

fn tradeoff_cells(row: &TradeoffRow) -> [String; 5] {
    [
        row.class.to_string(),
        row.delay.to_string(),
        row.vars.to_string(),
        row.rate.to_string(),
        row.rate.decimal4(),
    ]
}

const TRADEOFF_HEADER: [&str; 5] = ["class", "delay", "variables", "rate", "decimal"];

fn cmd_tradeoff(a: &TradeoffArgs, out: &mut dyn Write) -> Result<i32> {
    let rows = tradeoff_table(a.n)?;
    match a.format {
        OutFormat::Text => {
            let mut lines: Vec<[String; 5]> =
                vec![TRADEOFF_HEADER.map(|s| s.to_string())];
            lines.extend(rows.iter().map(tradeoff_cells));
            let mut widths = [0usize; 5];
            for line in &lines {
                for (w, cell) in widths.iter_mut().zip(line) {
                    *w = (*w).max(cell.len());
                }
            }
            for line in &lines {
                let mut rendered = String::new();
                for (i, (cell, w)) in line.iter().zip(widths).enumerate() {
                    if i > 0 {
                        rendered.push_str("  ");
                    }
                    if i == 0 {
                        rendered.push_str(&format!("{cell:<w$}"));
                    } else {
                        rendered.push_str(&format!("{cell:>w$}"));
                    }
                }
                let _ = writeln!(out, "{}", rendered.trim_end());
            }
        }
        OutFormat::Csv => {
            let _ = write!(out, "{}", crate::params::tradeoff_csv(a.n)?);
        }
        OutFormat::Latex => {
            let _ = writeln!(out, "\\begin{{tabular}}{{lrrrr}}");
            let _ = writeln!(out, "{} \\\\", TRADEOFF_HEADER.join(" & "));
            let _ = writeln!(out, "\\hline");
            for row in &rows {
                let _ = writeln!(out, "{} \\\\", tradeoff_cells(row).join(" & "));
            }
            let _ = writeln!(out, "\\end{{tabular}}");
        }
        OutFormat::Json => {
            let _ = writeln!(out, "{}", crate::params::tradeoff_json(a.n)?);
        }
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::cells_equal;

    fn run_cli(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["codforge"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    fn temp_file(name: &str, contents: &str) -> PathBuf {
        let path = std::env::temp_dir().join(format!(
            "codforge-cli-{}-{name}",
            std::process::id()
        ));
        std::fs::write(&path, contents).unwrap();
        path
    }

    #[test]
    fn generate_gw_text_has_expected_shape() {
        let (code, out, _) = run_cli(&["generate", "--family", "Gw", "--n", "3", "--w", "2"]);
        assert_eq!(code, EXIT_OK);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 4);
        for line in lines {
            assert_eq!(line.split_whitespace().count(), 3);
        }
    }

    #[test]
    fn generate_family_g_rejects_weight_flag() {
        let (code, _, err) = run_cli(&["generate", "--family", "G", "--n", "2", "--w", "1"]);
        assert_eq!(code, EXIT_ERR);
        assert!(err.contains("--w applies only to --family Gw"));
    }

    #[test]
    fn generate_accepts_negative_weight() {
        let (code, out, _) = run_cli(&["generate", "--family", "Gw", "--n", "3", "--w", "-1"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out, "0 0 0\n");
    }

    #[test]
    fn generate_scramble_is_deterministic_per_seed() {
        let args = ["generate", "--family", "Gw", "--n", "4", "--w", "2", "--seed", "9"];
        let (code_a, out_a, _) = run_cli(&args);
        let (code_b, out_b, _) = run_cli(&args);
        assert_eq!((code_a, code_b), (EXIT_OK, EXIT_OK));
        assert_eq!(out_a, out_b);
        let (_, out_c, _) = run_cli(&[
            "generate", "--family", "Gw", "--n", "4", "--w", "2", "--seed", "10",
        ]);
        assert_ne!(out_a, out_c);
    }

    #[test]
    fn scramble_count_without_seed_is_a_usage_error() {
        let (code, _, err) = run_cli(&[
            "generate", "--family", "Gw", "--n", "3", "--w", "2", "--scramble", "4",
        ]);
        assert_eq!(code, EXIT_ERR);
        assert!(err.contains("--seed"));
    }

    #[test]
    fn verify_reads_json_and_text_files() {
        let g = gen_gw(3, 2).unwrap();
        for format in [MatrixFormat::Text, MatrixFormat::Json] {
            let path = temp_file("verify-in.txt", &io::serialize(&g, format));
            let (code, out, _) = run_cli(&["verify", path.to_str().unwrap()]);
            assert_eq!(code, EXIT_OK);
            assert_eq!(out, "COD: yes\n");
            let _ = std::fs::remove_file(&path);
        }
    }

    #[test]
    fn verify_rejects_nonorthogonal_matrix_with_exit_one() {
        let path = temp_file("verify-bad.txt", "z1 z1\n");
        let (code, out, _) = run_cli(&["verify", path.to_str().unwrap()]);
        assert_eq!(code, EXIT_NO);
        assert_eq!(out, "COD: no\n");
        let _ = std::fs::remove_file(&path);
    }

    #[test]
    fn verify_format_flag_restricts_parser() {
        let g = gen_gw(2, 1).unwrap();
        let path = temp_file("verify-fmt.txt", &io::serialize(&g, MatrixFormat::Text));
        let (code, _, err) = run_cli(&["verify", "--format", "json", path.to_str().unwrap()]);
        assert_eq!(code, EXIT_ERR);
        assert!(!err.is_empty());
        let (code, _, err) = run_cli(&["verify", "--format", "csv", path.to_str().unwrap()]);
        assert_eq!(code, EXIT_ERR);
        assert!(err.contains("text or json"));
        let _ = std::fs::remove_file(&path);
    }

    #[test]
    fn analyze_reports_design_properties() {
        let g = gen_gw(3, 2).unwrap();
        let path = temp_file("analyze-in.txt", &io::serialize(&g, MatrixFormat::Text));
        let (code, out, _) = run_cli(&["analyze", path.to_str().unwrap()]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("size: 4 x 3"));
        assert!(out.contains("cod: yes"));
        assert!(out.contains("parameters: [4, 3, 3]"));
        assert!(out.contains("rate: 3/4"));
        assert!(out.contains("first type: yes"));
        assert!(out.contains("conjugation separated: yes"));
        assert!(out.contains("zero patterns: 4 distinct"));
        assert!(out.contains("signature: t_1=1"));
        let _ = std::fs::remove_file(&path);
    }

    #[test]
    fn analyze_degrades_on_nonorthogonal_input() {
        let path = temp_file("analyze-bad.txt", "z1 z1\n");
        let (code, out, _) = run_cli(&["analyze", path.to_str().unwrap()]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("cod: no"));
        assert!(out.contains("first failing gram cell: (1, 2)"));
        assert!(!out.contains("signature"));
        let _ = std::fs::remove_file(&path);
    }

    #[test]
    fn analyze_reports_unavailable_signature_for_non_first_type() {
        let path = temp_file("analyze-nft.txt", "z1 0\n0 z1*\n");
        let (code, out, _) = run_cli(&["analyze", path.to_str().unwrap()]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("cod: yes"));
        assert!(out.contains("first type: no"));
        assert!(out.contains("signature: unavailable (not first type)"));
        let _ = std::fs::remove_file(&path);
    }

    #[test]
    fn decompose_counts_catenated_parts() {
        let two = crate::structure::catenate(&[gen_gw(2, 1).unwrap(), gen_gw(2, 1).unwrap()])
            .unwrap();
        let path = temp_file("decompose-in.txt", &io::serialize(&two, MatrixFormat::Text));
        let (code, out, _) = run_cli(&["decompose", path.to_str().unwrap()]);
        assert_eq!(code, EXIT_OK);
        assert!(out.starts_with("parts: 2\n"));
        assert!(out.contains("part 1: rows [1, 2], vars [1, 2], class G1"));
        assert!(out.contains("part 2: rows [3, 4], vars [3, 4], class G1"));
        let (code, out, _) =
            run_cli(&["decompose", "--format", "json", path.to_str().unwrap()]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("\"rows\":[3,4]"));
        let _ = std::fs::remove_file(&path);
    }

    #[test]
    fn canonicalize_inverts_a_scramble() {
        let g = gen_gw(3, 2).unwrap();
        let (scrambled, _) = scramble(&g, 7, 16);
        let path = temp_file(
            "canonicalize-in.txt",
            &io::serialize(&scrambled, MatrixFormat::Text),
        );
        let (code, out, _) = run_cli(&["canonicalize", path.to_str().unwrap()]);
        assert_eq!(code, EXIT_OK);
        assert!(out.starts_with("class: G1\n"));
        // The canonical form folds w=2 down to the equivalent w=1 slice.
        let target = io::serialize(&gen_gw(3, 1).unwrap(), MatrixFormat::Text);
        assert!(out.ends_with(&target));
        let _ = std::fs::remove_file(&path);
    }

    #[test]
    fn canonicalize_errors_on_composite_input() {
        let two = crate::structure::catenate(&[gen_gw(2, 1).unwrap(), gen_gw(2, 1).unwrap()])
            .unwrap();
        let path = temp_file("canonicalize-two.txt", &io::serialize(&two, MatrixFormat::Text));
        let (code, _, err) = run_cli(&["canonicalize", path.to_str().unwrap()]);
        assert_eq!(code, EXIT_ERR);
        assert!(err.starts_with("error:"));
        let _ = std::fs::remove_file(&path);
    }

    #[test]
    fn equivalent_compares_two_files() {
        let g = gen_gw(3, 2).unwrap();
        let (scrambled, _) = scramble(&g, 3, 12);
        let a = temp_file("equiv-a.txt", &io::serialize(&g, MatrixFormat::Text));
        let b = temp_file("equiv-b.txt", &io::serialize(&scrambled, MatrixFormat::Json));
        let (code, out, _) =
            run_cli(&["equivalent", a.to_str().unwrap(), b.to_str().unwrap()]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out, "equivalent: yes\n");
        let c = temp_file(
            "equiv-c.txt",
            &io::serialize(&gen_g(3).unwrap(), MatrixFormat::Text),
        );
        let (code, out, _) =
            run_cli(&["equivalent", a.to_str().unwrap(), c.to_str().unwrap()]);
        assert_eq!(code, EXIT_NO);
        assert_eq!(out, "equivalent: no\n");
        for path in [a, b, c] {
            let _ = std::fs::remove_file(&path);
        }
    }

    #[test]
    fn feasible_prints_solutions_or_infeasible() {
        let (code, out, _) = run_cli(&["feasible", "--p", "4", "--n", "3", "--k", "3"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out, "t_1=1\n");
        let (code, out, _) = run_cli(&["feasible", "--p", "2", "--n", "3", "--k", "2"]);
        assert_eq!(code, EXIT_NO);
        assert_eq!(out, "infeasible\n");
        let (code, out, _) = run_cli(&[
            "feasible", "--p", "2", "--n", "3", "--k", "2", "--format", "json",
        ]);
        assert_eq!(code, EXIT_NO);
        assert_eq!(out, "{\"solutions\":[]}\n");
    }

    #[test]
    fn tradeoff_table_carries_golden_row() {
        let (code, out, _) = run_cli(&["tradeoff", "--n", "14"]);
        assert_eq!(code, EXIT_OK);
        let golden = out
            .lines()
            .find(|line| line.starts_with("G7"))
            .expect("w=7 row present");
        for field in ["6006", "3432", "4/7", "0.5714"] {
            assert!(golden.contains(field), "missing {field} in {golden}");
        }
        let (_, csv, _) = run_cli(&["tradeoff", "--n", "14", "--format", "csv"]);
        assert!(csv.starts_with("w,p,k,rate_num,rate_den,rate_decimal\n"));
        assert!(csv.contains("7,6006,3432,4,7,0.5714"));
        let (_, latex, _) = run_cli(&["tradeoff", "--n", "14", "--format", "latex"]);
        assert!(latex.contains("G7 & 6006 & 3432 & 4/7 & 0.5714 \\\\"));
        let (_, json, _) = run_cli(&["tradeoff", "--n", "14", "--format", "json"]);
        assert!(json.contains("\"p\":6006"));
    }

    #[test]
    fn generated_json_round_trips_through_verify() {
        for (family, n, w) in [("G", 2, None), ("Gw", 4, Some(2)), ("Hm", 4, None)] {
            let mut args = vec![
                "generate".to_string(),
                "--family".to_string(),
                family.to_string(),
                "--n".to_string(),
                n.to_string(),
                "--format".to_string(),
                "json".to_string(),
            ];
            if let Some(w) = w {
                args.extend(["--w".to_string(), w.to_string()]);
            }
            let refs: Vec<&str> = args.iter().map(|s| s.as_str()).collect();
            let (code, out, _) = run_cli(&refs);
            assert_eq!(code, EXIT_OK);
            let parsed = io::parse_auto(&out).unwrap();
            assert!(parsed.is_cod());
        }
    }

    #[test]
    fn usage_errors_exit_two_and_help_exits_zero() {
        let (code, _, err) = run_cli(&["frobnicate"]);
        assert_eq!(code, EXIT_ERR);
        assert!(!err.is_empty());
        let (code, _, err) = run_cli(&["generate", "--family", "Gw", "--w", "2"]);
        assert_eq!(code, EXIT_ERR);
        assert!(err.contains("--n"));
        let (code, out, _) = run_cli(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("codforge <verb>"));
    }

    #[test]
    fn scrambled_generate_output_stays_equivalent() {
        let (code, out, _) = run_cli(&[
            "generate", "--family", "Hm", "--n", "4", "--seed", "42", "--scramble", "24",
        ]);
        assert_eq!(code, EXIT_OK);
        let parsed = io::parse_auto(&out).unwrap();
        let (canon, _) = canonicalize_atomic(&parsed).unwrap();
        assert!(cells_equal(&canon, &gen_hm(4).unwrap()));
    }
}
