use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use trigcert_core::minimize::min_alpha_form;
use trigcert_core::ratpoly::text::{parse_poly, parse_rational};
use trigcert_core::reduce::{parse_interval, to_cosine_poly, to_sine_form, weierstrass, IntervalSpec};
use trigcert_core::sturm::count_roots;
use trigcert_core::trigexpr::{normalize, parse_with, MixedForm, ParseOptions, DEFAULT_MAX_FREQUENCY};
use trigcert_core::verify::{check_certificate, verify_form, verify_t_interval, Outcome, Verdict};
use trigcert_core::Error as CoreError;

use crate::certfile::{certificate_from_json, CertFile};
use crate::report::{
    Input, MinimizeResult, ParameterPart, Reduction, ReduceResult, Report, SturmResult, Timings, VerifyResult,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VIOLATED: u8 = 1;
pub const EXIT_INCONCLUSIVE: u8 = 2;
pub const EXIT_ERROR: u8 = 3;

/// Environment variable overriding the largest accepted frequency.
pub const MAX_DEGREE_ENV: &str = "TRIGCERT_MAX_DEGREE";

#[derive(Debug, Parser)]
#[command(name = "trigcert", version, about = "Exact nonnegativity certificates for trigonometric polynomials")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Include wall-clock timings (makes output nondeterministic).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Rewrite as P1(cos x) + sin(x) P2(cos x) and reduce to an algebraic polynomial.
    Reduce {
        /// Trigonometric expression, e.g. "1 + cos(2*x)".
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Pure cosine reduction: f(x) = P(cos x).
        #[arg(long, conflicts_with = "sine")]
        cosine: bool,
        /// Pure sine reduction: f(x) = sin(x) P(cos x).
        #[arg(long)]
        sine: bool,
    },
    /// Count distinct real roots of a polynomial in a T interval.
    Sturm {
        /// Polynomial in T with rational coefficients, e.g. "T^2 - 2".
        #[arg(allow_hyphen_values = true)]
        poly: String,
        /// Closed T interval such as "T=0,T=inf" or "T=-2,T=2".
        #[arg(allow_hyphen_values = true)]
        interval: String,
    },
    /// Decide whether an expression is nonnegative on an interval.
    Verify {
        /// Trigonometric expression, e.g. "1 + cos(2*x)".
        #[arg(required_unless_present = "batch", allow_hyphen_values = true)]
        expr: Option<String>,
        /// Angle interval such as "0,pi" or "-pi,pi/2", or a T interval "T=lo,T=hi".
        #[arg(required_unless_present = "batch", allow_hyphen_values = true)]
        interval: Option<String>,
        /// Embed the certificate in the report.
        #[arg(long)]
        cert: bool,
        /// Write the certificate to a file.
        #[arg(long, value_name = "PATH", conflicts_with = "batch")]
        cert_out: Option<PathBuf>,
        /// Verify every `EXPR ; INTERVAL` line of a file.
        #[arg(long, value_name = "FILE", conflicts_with_all = ["expr", "interval"])]
        batch: Option<PathBuf>,
        /// Worker threads for --batch.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
        jobs: u16,
    },
    /// Least alpha with f(x) + c*alpha >= 0 on an interval, as a certified enclosure.
    Minimize {
        /// Trigonometric expression, e.g. "1 + cos(2*x)".
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Angle interval such as "0,pi" or "-pi,pi/2".
        #[arg(allow_hyphen_values = true)]
        interval: String,
        /// Width of the enclosure.
        #[arg(long, default_value = "1e-9")]
        tol: String,
        /// Embed the certificates of both enclosure ends.
        #[arg(long)]
        cert: bool,
    },
    /// Re-check a certificate file or a report with an embedded certificate.
    CheckCert { path: PathBuf },
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_ERROR
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8> {
    let start = Instant::now();
    let ctx = Ctx {
        format: cli.format,
        start: cli.timings.then_some(start),
        opts: parse_options()?,
    };
    match &cli.command {
        Command::Reduce { expr, cosine, sine } => ctx.reduce(expr, *cosine, *sine, out),
        Command::Sturm { poly, interval } => ctx.sturm(poly, interval, out),
        Command::Verify {
            expr,
            interval,
            cert,
            cert_out,
            batch,
            jobs,
        } => match batch {
            Some(path) => ctx.batch(path, *cert, *jobs as usize, out),
            None => {
                let (expr, interval) = (expr.as_deref().unwrap_or(""), interval.as_deref().unwrap_or(""));
                let (text, code) = ctx.verify(expr, interval, *cert, cert_out.as_deref())?;
                out.write_all(text.as_bytes())?;
                Ok(code)
            }
        },
        Command::Minimize { expr, interval, tol, cert } => ctx.minimize(expr, interval, tol, *cert, out),
        Command::CheckCert { path } => ctx.check_cert(path, out, err),
    }
}

fn parse_options() -> Result<ParseOptions> {
    let max_frequency = match std::env::var(MAX_DEGREE_ENV) {
        Ok(v) => v
            .trim()
            .parse::<u32>()
            .ok()
            .filter(|&k| k > 0)
            .ok_or_else(|| anyhow!("{MAX_DEGREE_ENV} must be a positive integer, got `{v}`"))?,
        Err(_) => DEFAULT_MAX_FREQUENCY,
    };
    Ok(ParseOptions { max_frequency })
}

/// Adds the input text and a caret under the offending byte to errors that
/// carry an offset.
fn with_position(e: CoreError, text: &str) -> anyhow::Error {
    let offset = match &e {
        CoreError::Syntax { offset, .. }
        | CoreError::UnsupportedArgument { offset }
        | CoreError::FrequencyTooLarge { offset, .. }
        | CoreError::MultipleParameters { offset, .. } => Some(*offset),
        _ => None,
    };
    match offset {
        Some(o) => {
            let col = text.get(..o.min(text.len())).map_or(o, |s| s.chars().count());
            anyhow!("{e}\n  {text}\n  {}^", " ".repeat(col))
        }
        None => anyhow!(e),
    }
}

struct Ctx {
    format: Format,
    start: Option<Instant>,
    opts: ParseOptions,
}

impl Ctx {
    fn form(&self, expr: &str) -> Result<MixedForm> {
        let e = parse_with(expr, &self.opts).map_err(|e| with_position(e, expr))?;
        Ok(normalize(&e)?)
    }

    fn timings(&self) -> Option<Timings> {
        self.start.map(|s| Timings {
            total_us: s.elapsed().as_micros() as u64,
        })
    }

    fn emit<R: Serialize>(&self, mut report: Report<R>, text: String) -> Result<String> {
        report.timings = self.timings();
        Ok(match self.format {
            Format::Json => serde_json::to_string(&report)? + "\n",
            Format::Text => match &report.timings {
                Some(t) => format!("{text}time: {} us\n", t.total_us),
                None => text,
            },
        })
    }

    fn reduce(&self, expr: &str, cosine: bool, sine: bool, out: &mut dyn Write) -> Result<u8> {
        let m = self.form(expr)?;
        let reduction = if cosine {
            Reduction::Cosine {
                poly: to_cosine_poly(&m).context("--cosine")?.display("X").to_string(),
            }
        } else if sine {
            Reduction::Sine {
                poly: to_sine_form(&m).context("--sine")?.display("X").to_string(),
            }
        } else if m.param.is_some() {
            let n = trigcert_core::minimize::parametric_numerator(&m)?;
            let name = m.param_name().unwrap_or("alpha");
            Reduction::HalfAngle {
                numerator: trigcert_core::ratpoly::text::format_param_poly(&n.poly, "T", name),
                d: n.denom_scalar.to_string(),
                m: n.denom_power,
            }
        } else {
            let rf = weierstrass(&m)?;
            Reduction::HalfAngle {
                numerator: rf.numerator.to_string(),
                d: rf.denom_scalar.to_string(),
                m: rf.denom_power,
            }
        };
        let result = ReduceResult {
            p1: m.p1.display("X").to_string(),
            p2: m.p2.display("X").to_string(),
            parameter: m.param.as_ref().map(|p| ParameterPart {
                name: p.name.clone(),
                q1: p.p1.display("X").to_string(),
                q2: p.p2.display("X").to_string(),
            }),
            reduction,
        };
        let mut text = format!("P1(X) = {}\nP2(X) = {}\n", result.p1, result.p2);
        if let Some(p) = &result.parameter {
            text += &format!("parameter {}: Q1(X) = {}, Q2(X) = {}\n", p.name, p.q1, p.q2);
        }
        match &result.reduction {
            Reduction::HalfAngle { numerator, d, m } => {
                text += &format!("N(T) = {numerator}\nd = {d}\nm = {m}\n");
            }
            Reduction::Cosine { poly } => text += &format!("f(x) = P(cos x) with P(X) = {poly}\n"),
            Reduction::Sine { poly } => text += &format!("f(x) = sin(x) P(cos x) with P(X) = {poly}\n"),
        }
        let input = Input {
            expr: Some(expr.into()),
            mode: Some(if cosine {
                "cosine"
            } else if sine {
                "sine"
            } else {
                "half-angle"
            }),
            ..Input::default()
        };
        let s = self.emit(Report::new("reduce", input, result), text)?;
        out.write_all(s.as_bytes())?;
        Ok(EXIT_OK)
    }

    fn sturm(&self, poly: &str, interval: &str, out: &mut dyn Write) -> Result<u8> {
        let (p, _) = parse_poly(poly).map_err(|e| with_position(e, poly))?;
        let iv = match parse_interval(interval)? {
            IntervalSpec::T(iv) => iv,
            IntervalSpec::Angles(..) => bail!("sturm expects a T interval such as \"T=0,T=inf\""),
        };
        let roots = count_roots(&p, &iv)?;
        let result = SturmResult {
            poly: p.to_string(),
            interval: iv.to_string(),
            roots,
        };
        let text = format!("{roots}\n");
        let input = Input {
            poly: Some(poly.into()),
            interval: Some(interval.into()),
            ..Input::default()
        };
        let s = self.emit(Report::new("sturm", input, result), text)?;
        out.write_all(s.as_bytes())?;
        Ok(EXIT_OK)
    }

    fn verdict(&self, expr: &str, interval: &str) -> Result<Verdict> {
        let m = self.form(expr)?;
        Ok(match parse_interval(interval)? {
            IntervalSpec::Angles(a, b) => verify_form(&m, &a, &b)?,
            IntervalSpec::T(iv) => verify_t_interval(&m, &iv)?,
        })
    }

    /// Returns the rendered report and the exit code.
    fn verify(&self, expr: &str, interval: &str, cert: bool, cert_out: Option<&Path>) -> Result<(String, u8)> {
        let v = self.verdict(expr, interval)?;
        let file = CertFile::from_certificate(&v.certificate);
        if let Some(path) = cert_out {
            let json = serde_json::to_string_pretty(&file)? + "\n";
            fs::write(path, json).with_context(|| format!("writing {}", path.display()))?;
        }
        let result = VerifyResult::from_verdict(&v);
        let text = result.render_text();
        let input = Input {
            expr: Some(expr.into()),
            interval: Some(interval.into()),
            ..Input::default()
        };
        let mut report = Report::new("verify", input, result);
        if cert {
            report.certificate = Some(file);
        }
        let code = match v.outcome {
            Outcome::Nonnegative => EXIT_OK,
            Outcome::Violated => EXIT_VIOLATED,
            Outcome::InconclusiveBoundary => EXIT_INCONCLUSIVE,
        };
        Ok((self.emit(report, text)?, code))
    }

    /// Verifies `EXPR ; INTERVAL` lines in parallel; output keeps input order
    /// and the exit code is the largest of the individual codes.
    fn batch(&self, path: &Path, cert: bool, jobs: usize, out: &mut dyn Write) -> Result<u8> {
        let content = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let items: Vec<(usize, &str)> = content
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect();
        let results: Vec<Mutex<Option<(String, u8)>>> = items.iter().map(|_| Mutex::new(None)).collect();
        let next = AtomicUsize::new(0);
        std::thread::scope(|s| {
            for _ in 0..jobs.min(items.len().max(1)) {
                s.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    let Some(&(line, text)) = items.get(i) else { break };
                    let r = match text.split_once(';') {
                        Some((e, iv)) => self.verify(e.trim(), iv.trim(), cert, None),
                        None => Err(anyhow!("expected `EXPR ; INTERVAL`")),
                    };
                    let r = r.unwrap_or_else(|e| (self.batch_error(line, text, &e), EXIT_ERROR));
                    *results[i].lock().expect("no poisoning") = Some(r);
                });
            }
        });
        let mut code = EXIT_OK;
        for ((line, text), r) in items.iter().zip(results) {
            let (s, c) = r.into_inner().expect("no poisoning").expect("every item ran");
            if self.format == Format::Text {
                writeln!(out, "== line {line}: {text}")?;
            }
            out.write_all(s.as_bytes())?;
            code = code.max(c);
        }
        Ok(code)
    }

    fn batch_error(&self, line: usize, text: &str, e: &anyhow::Error) -> String {
        match self.format {
            Format::Text => format!("error: {e:#}\n"),
            Format::Json => {
                let v = serde_json::json!({
                    "schema_version": crate::report::REPORT_SCHEMA,
                    "command": "verify",
                    "input": { "line": line, "text": text },
                    "error": format!("{e:#}"),
                });
                v.to_string() + "\n"
            }
        }
    }

    fn minimize(&self, expr: &str, interval: &str, tol: &str, cert: bool, out: &mut dyn Write) -> Result<u8> {
        let m = self.form(expr)?;
        let tol_r = parse_rational(tol).ok_or_else(|| anyhow!("invalid tolerance `{tol}`"))?;
        let (a, b) = match parse_interval(interval)? {
            IntervalSpec::Angles(a, b) => (a, b),
            IntervalSpec::T(_) => bail!("minimize expects an angle interval such as \"0,pi\""),
        };
        let enc = min_alpha_form(&m, &a, &b, &tol_r)?;
        let name = m.param_name().unwrap_or("alpha").to_string();
        let result = MinimizeResult::from_enclosure(&enc, &name);
        let text = result.render_text();
        let input = Input {
            expr: Some(expr.into()),
            interval: Some(interval.into()),
            tol: Some(tol.into()),
            ..Input::default()
        };
        let mut report = Report::new("minimize", input, MinimizeWithCerts { result, certificates: None });
        if cert {
            report.result.certificates = Some(EnclosureCerts {
                lo: CertFile::from_certificate(&enc.lo_verdict.certificate),
                hi: CertFile::from_certificate(&enc.hi_verdict.certificate),
            });
        }
        let s = self.emit(report, text)?;
        out.write_all(s.as_bytes())?;
        Ok(EXIT_OK)
    }

    fn check_cert(&self, path: &Path, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8> {
        let content = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let problems = match serde_json::from_str::<serde_json::Value>(&content) {
            Err(e) => vec![format!("not JSON: {e}")],
            Ok(v) => match certificate_from_json(&v) {
                Err(e) => vec![format!("{e:#}")],
                Ok(c) => check_certificate(&c).err().unwrap_or_default(),
            },
        };
        let valid = problems.is_empty();
        match self.format {
            Format::Json => {
                let v = serde_json::json!({
                    "schema_version": crate::report::REPORT_SCHEMA,
                    "command": "check-cert",
                    "input": { "path": path.display().to_string() },
                    "result": { "valid": valid, "problems": problems },
                });
                writeln!(out, "{v}")?;
            }
            Format::Text => {
                if valid {
                    writeln!(out, "certificate valid")?;
                } else {
                    writeln!(out, "certificate INVALID")?;
                    for p in &problems {
                        writeln!(err, "  {p}")?;
                    }
                }
            }
        }
        Ok(if valid { EXIT_OK } else { EXIT_VIOLATED })
    }
}

#[derive(Debug, Serialize)]
struct MinimizeWithCerts {
    #[serde(flatten)]
    result: MinimizeResult,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificates: Option<EnclosureCerts>,
}

#[derive(Debug, Serialize)]
struct EnclosureCerts {
    lo: CertFile,
    hi: CertFile,
}
