//! Interchange records and the command-line front end.
//!
//! All rationals travel as strings (`"-7/3"`, `"4"`). Records reject unknown
//! keys. The emitted form of a record is compact JSON with fields in
//! declaration order, so canonical inputs round-trip byte for byte.

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exact_arith::{format_rational, parse_rational, rat, Polynomial, Rational};
use crate::k_theory_norm::{
    is_norm, obstruction_group, witness_non_norm, NormVerdict, SteinbergSymbol, SymbolProduct,
};
use crate::number_field::{sign_at_place, FieldElement, NumberField, RealPlace};
use crate::real_roots::IsolatingInterval;
use crate::relative_ext::{fiber, RelativeExtension, RAMIFICATION_CONVENTION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MALFORMED: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_INCONSISTENT: i32 = 4;
pub const EXIT_NOT_NORM: i32 = 10;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldRecord {
    pub name: String,
    pub var: String,
    pub min_poly: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionRecord {
    pub base: FieldRecord,
    pub var: String,
    pub min_poly_over_base: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolRecord {
    pub f: Vec<String>,
    pub g: Vec<String>,
    pub e: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub is_norm: bool,
    pub n: u32,
    pub convention: String,
    #[serde(rename = "Sr")]
    pub sr: Vec<usize>,
    /// `null` when the local torsion is trivial.
    pub parity: Option<Vec<u8>>,
    pub failing_places: Vec<usize>,
    pub reason: String,
    pub symbolic_caveat: bool,
}

/// A failure tied to a location inside an input record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecordError {
    pub path: String,
    pub error: Error,
}

impl fmt::Display for RecordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            write!(f, "{}", self.error)
        } else {
            write!(f, "{}: {}", self.path, self.error)
        }
    }
}

impl std::error::Error for RecordError {}

impl RecordError {
    pub fn new(path: impl Into<String>, error: Error) -> Self {
        RecordError {
            path: path.into(),
            error,
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.error.exit_code()
    }
}

type RecordResult<T> = std::result::Result<T, RecordError>;

trait At<T> {
    fn at(self, path: impl FnOnce() -> String) -> RecordResult<T>;
}

impl<T> At<T> for crate::error::Result<T> {
    fn at(self, path: impl FnOnce() -> String) -> RecordResult<T> {
        self.map_err(|e| RecordError::new(path(), e))
    }
}

fn rationals(items: &[String], path: &str) -> RecordResult<Vec<Rational>> {
    items
        .iter()
        .enumerate()
        .map(|(i, s)| parse_rational(s).at(|| format!("{path}[{i}]")))
        .collect()
}

pub fn format_poly(p: &Polynomial<Rational>) -> String {
    let items: Vec<String> = p.coeffs().iter().map(format_rational).collect();
    serde_json::to_string(&items).expect("strings serialize")
}

pub fn field_from_record(rec: &FieldRecord, path: &str) -> RecordResult<NumberField> {
    let coeffs = rationals(&rec.min_poly, &format!("{path}min_poly"))?;
    if coeffs.last().is_some_and(|c| *c == rat(0)) {
        return Err(RecordError::new(
            format!("{path}min_poly"),
            Error::Malformed("leading coefficient is zero".into()),
        ));
    }
    NumberField::new(rec.name.clone(), rec.var.clone(), Polynomial::new(coeffs))
        .at(|| format!("{path}min_poly"))
}

pub fn field_to_record(f: &NumberField) -> FieldRecord {
    FieldRecord {
        name: f.name().to_string(),
        var: f.var().to_string(),
        min_poly: f.min_poly().coeffs().iter().map(format_rational).collect(),
    }
}

pub fn element_from_strings(
    field: &NumberField,
    items: &[String],
    path: &str,
) -> RecordResult<FieldElement> {
    let coeffs = rationals(items, path)?;
    field.element(coeffs).at(|| path.to_string())
}

/// Element form padded to the field degree.
pub fn element_to_strings(a: &FieldElement) -> Vec<String> {
    a.coeffs().iter().map(format_rational).collect()
}

pub fn extension_from_record(rec: &ExtensionRecord) -> RecordResult<RelativeExtension> {
    let base = field_from_record(&rec.base, "base.")?;
    let mut coeffs = Vec::with_capacity(rec.min_poly_over_base.len());
    for (i, c) in rec.min_poly_over_base.iter().enumerate() {
        coeffs.push(element_from_strings(
            &base,
            c,
            &format!("min_poly_over_base[{i}]"),
        )?);
    }
    if coeffs.last().is_some_and(FieldElement::is_zero) {
        return Err(RecordError::new(
            "min_poly_over_base",
            Error::Malformed("leading coefficient is zero".into()),
        ));
    }
    RelativeExtension::new(&base, rec.var.clone(), Polynomial::new(coeffs))
        .at(|| "min_poly_over_base".to_string())
}

pub fn extension_to_record(ext: &RelativeExtension) -> ExtensionRecord {
    ExtensionRecord {
        base: field_to_record(ext.base()),
        var: ext.var().to_string(),
        min_poly_over_base: ext
            .defining_polynomial()
            .coeffs()
            .iter()
            .map(element_to_strings)
            .collect(),
    }
}

pub fn symbols_from_records(
    field: &NumberField,
    recs: &[SymbolRecord],
) -> RecordResult<SymbolProduct> {
    let mut out = SymbolProduct::new(field);
    for (i, r) in recs.iter().enumerate() {
        let f = element_from_strings(field, &r.f, &format!("[{i}].f"))?;
        let g = element_from_strings(field, &r.g, &format!("[{i}].g"))?;
        let s = SteinbergSymbol::new(f, g).at(|| format!("[{i}]"))?;
        out.push(s, r.e).at(|| format!("[{i}]"))?;
    }
    Ok(out)
}

pub fn symbols_to_records(x: &SymbolProduct) -> Vec<SymbolRecord> {
    x.factors()
        .iter()
        .map(|(s, e)| SymbolRecord {
            f: element_to_strings(s.f()),
            g: element_to_strings(s.g()),
            e: *e,
        })
        .collect()
}

pub fn verdict_to_record(v: &NormVerdict) -> VerdictRecord {
    VerdictRecord {
        is_norm: v.is_norm,
        n: v.n,
        convention: RAMIFICATION_CONVENTION.to_string(),
        sr: v.ramified_places.iter().map(RealPlace::index).collect(),
        parity: v.parity.as_ref().map(|p| p.bits.clone()),
        failing_places: v.failing_places.iter().map(RealPlace::index).collect(),
        reason: v.reason.as_str().to_string(),
        symbolic_caveat: v.symbolic_caveat,
    }
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> RecordResult<T> {
    serde_json::from_str(text).map_err(|e| RecordError::new(what, Error::Malformed(format!("{e}"))))
}

pub fn parse_field_json(text: &str) -> RecordResult<NumberField> {
    let rec: FieldRecord = parse_json(text, "field record")?;
    field_from_record(&rec, "")
}

pub fn parse_extension_json(text: &str) -> RecordResult<RelativeExtension> {
    let rec: ExtensionRecord = parse_json(text, "extension record")?;
    extension_from_record(&rec)
}

pub fn parse_symbols_json(field: &NumberField, text: &str) -> RecordResult<SymbolProduct> {
    let recs: Vec<SymbolRecord> = parse_json(text, "symbols record")?;
    symbols_from_records(field, &recs)
}

/// Inline element: a JSON list of rational strings, or comma-separated
/// rationals.
pub fn parse_inline_element(field: &NumberField, text: &str) -> RecordResult<FieldElement> {
    let items: Vec<String> = if text.trim_start().starts_with('[') {
        parse_json(text, "--element")?
    } else {
        text.split(',').map(|s| s.trim().to_string()).collect()
    };
    element_from_strings(field, &items, "--element")
}

fn read_file(path: &Path) -> RecordResult<String> {
    std::fs::read_to_string(path).map_err(|e| {
        RecordError::new(
            path.display().to_string(),
            Error::Malformed(format!("cannot read file: {e}")),
        )
    })
}

fn in_file<T>(path: &Path, r: RecordResult<T>) -> RecordResult<T> {
    r.map_err(|e| RecordError {
        path: if e.path.is_empty() {
            path.display().to_string()
        } else {
            format!("{}: {}", path.display(), e.path)
        },
        error: e.error,
    })
}

pub fn load_field(path: &Path) -> RecordResult<NumberField> {
    in_file(path, parse_field_json(&read_file(path)?))
}

pub fn load_extension(path: &Path) -> RecordResult<RelativeExtension> {
    in_file(path, parse_extension_json(&read_file(path)?))
}

pub fn load_symbols(field: &NumberField, path: &Path) -> RecordResult<SymbolProduct> {
    in_file(path, parse_symbols_json(field, &read_file(path)?))
}

#[derive(Parser, Debug)]
#[command(
    name = "k2norm",
    version,
    about = "Decide whether products of Steinberg symbols are norms in even K-groups of number fields"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the real places of a field with isolating intervals and (r1, r2).
    Places {
        field: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Print the signature (r1, r2) of a field.
    Signature {
        field: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Sign of an element at one real place.
    Sign {
        field: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        element: String,
        #[arg(long)]
        place: usize,
        #[arg(long)]
        json: bool,
    },
    /// Per-place fiber table and the set of ramified real places.
    Ramified {
        ext: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether a symbol product is a norm from the extension.
    IsNorm {
        ext: PathBuf,
        symbols: PathBuf,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long)]
        json: bool,
    },
    /// Describe the cokernel of the norm map on K_2n.
    Obstruction {
        ext: PathBuf,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long)]
        json: bool,
    },
    /// Emit a symbol product that fails to be a norm exactly at one place.
    Witness {
        ext: PathBuf,
        #[arg(long)]
        place: usize,
        #[arg(long)]
        json: bool,
    },
}

fn interval_strings(b: &IsolatingInterval) -> [String; 2] {
    [format_rational(b.low()), format_rational(b.high())]
}

/// Width used when echoing place intervals to humans.
fn display_width() -> Rational {
    Rational::new(1.into(), 1024.into())
}

fn place_interval(v: &RealPlace) -> IsolatingInterval {
    v.refined_interval(&display_width())
}

fn warn_field(f: &NumberField, err: &mut dyn Write) {
    if let Some(w) = f.warning() {
        let _ = writeln!(err, "warning: {w}");
    }
}

fn place_arg(field: &NumberField, index: usize) -> RecordResult<RealPlace> {
    field.real_place(index).at(|| "--place".to_string())
}

/// Runs one command; returns the process exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli, out, err),
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            if code == 0 {
                EXIT_OK
            } else {
                EXIT_MALFORMED
            }
        }
    }
}

fn emit_json(out: &mut dyn Write, value: &serde_json::Value) {
    let _ = writeln!(out, "{}", serde_json::to_string(value).expect("json"));
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> RecordResult<i32> {
    match cli.command {
        Command::Places { field, json } => {
            let f = load_field(&field)?;
            warn_field(&f, err);
            let (r1, r2) = f.signature();
            let places = f.real_places();
            if json {
                let items: Vec<_> = places
                    .iter()
                    .map(|v| {
                        serde_json::json!({
                            "index": v.index(),
                            "interval": interval_strings(&place_interval(v)),
                        })
                    })
                    .collect();
                emit_json(
                    out,
                    &serde_json::json!({
                        "field": f.name(),
                        "degree": f.degree(),
                        "r1": r1,
                        "r2": r2,
                        "irreducibility": f.irreducibility().as_str(),
                        "places": items,
                    }),
                );
            } else {
                let _ = writeln!(
                    out,
                    "field {} = Q[{}]/({}), degree {} (irreducibility {})",
                    f.name(),
                    f.var(),
                    format_poly(f.min_poly()),
                    f.degree(),
                    f.irreducibility().as_str()
                );
                let _ = writeln!(out, "signature: r1 = {r1}, r2 = {r2}");
                for v in &places {
                    let _ = writeln!(out, "place {}: root in {}", v.index(), place_interval(v));
                }
            }
            Ok(EXIT_OK)
        }
        Command::Signature { field, json } => {
            let f = load_field(&field)?;
            warn_field(&f, err);
            let (r1, r2) = f.signature();
            if json {
                emit_json(out, &serde_json::json!({ "r1": r1, "r2": r2 }));
            } else {
                let _ = writeln!(out, "({r1}, {r2})");
            }
            Ok(EXIT_OK)
        }
        Command::Sign {
            field,
            element,
            place,
            json,
        } => {
            let f = load_field(&field)?;
            warn_field(&f, err);
            let a = parse_inline_element(&f, &element)?;
            let v = place_arg(&f, place)?;
            let s = sign_at_place(&a, &v).at(|| "--element".to_string())?;
            if json {
                emit_json(
                    out,
                    &serde_json::json!({
                        "sign": s,
                        "place": place,
                        "interval": interval_strings(&place_interval(&v)),
                    }),
                );
            } else {
                let text = match s {
                    1 => "+1",
                    -1 => "-1",
                    _ => "0",
                };
                let _ = writeln!(out, "{text}");
            }
            Ok(EXIT_OK)
        }
        Command::Ramified { ext, json } => {
            let l = load_extension(&ext)?;
            warn_field(l.base(), err);
            let mut rows = Vec::new();
            for v in l.base().real_places() {
                rows.push(fiber(&l, &v).at(|| "min_poly_over_base".to_string())?);
            }
            let sr: Vec<usize> = rows
                .iter()
                .filter(|r| r.ramified)
                .map(|r| r.place.index())
                .collect();
            if json {
                let items: Vec<_> = rows
                    .iter()
                    .map(|r| {
                        serde_json::json!({
                            "index": r.place.index(),
                            "interval": interval_strings(&place_interval(&r.place)),
                            "real_above": r.real_above,
                            "complex_pairs_above": r.complex_pairs_above,
                            "ramified": r.ramified,
                        })
                    })
                    .collect();
                emit_json(
                    out,
                    &serde_json::json!({
                        "convention": RAMIFICATION_CONVENTION,
                        "rel_degree": l.rel_degree(),
                        "fibers": items,
                        "Sr": sr,
                    }),
                );
            } else {
                let _ = writeln!(out, "convention: {RAMIFICATION_CONVENTION}");
                let _ = writeln!(out, "relative degree: {}", l.rel_degree());
                let _ = writeln!(out, "place  interval  real_above  complex_pairs  ramified");
                for r in &rows {
                    let _ = writeln!(
                        out,
                        "{}  {}  {}  {}  {}",
                        r.place.index(),
                        place_interval(&r.place),
                        r.real_above,
                        r.complex_pairs_above,
                        r.ramified
                    );
                }
                let _ = writeln!(out, "S_r: {sr:?}");
            }
            Ok(EXIT_OK)
        }
        Command::IsNorm {
            ext,
            symbols,
            n,
            json,
        } => {
            let l = load_extension(&ext)?;
            warn_field(l.base(), err);
            let x = load_symbols(l.base(), &symbols)?;
            let verdict = is_norm(&l, &x, n).at(|| symbols.display().to_string())?;
            let rec = verdict_to_record(&verdict);
            if json {
                let _ = writeln!(out, "{}", serde_json::to_string(&rec).expect("json"));
            } else {
                let _ = writeln!(out, "is_norm: {}", rec.is_norm);
                let _ = writeln!(out, "n: {}", rec.n);
                let _ = writeln!(out, "reason: {}", rec.reason);
                let _ = writeln!(out, "convention: {}", rec.convention);
                let _ = writeln!(out, "S_r: {:?}", rec.sr);
                match &rec.parity {
                    Some(p) => {
                        let _ = writeln!(out, "parity: {p:?}");
                    }
                    None => {
                        let _ = writeln!(out, "parity: (local torsion trivial)");
                    }
                }
                let _ = writeln!(out, "failing_places: {:?}", rec.failing_places);
                if rec.symbolic_caveat {
                    let _ = writeln!(
                        out,
                        "note: n > 1; criterion applied to the symbol product as given"
                    );
                }
            }
            Ok(if verdict.is_norm {
                EXIT_OK
            } else {
                EXIT_NOT_NORM
            })
        }
        Command::Obstruction { ext, n, json } => {
            let l = load_extension(&ext)?;
            warn_field(l.base(), err);
            let g = obstruction_group(&l, n).at(|| "--n".to_string())?;
            let places: Vec<usize> = g.places.iter().map(RealPlace::index).collect();
            if json {
                emit_json(
                    out,
                    &serde_json::json!({
                        "n": n,
                        "rank": g.rank,
                        "group": g.to_string(),
                        "places": places,
                        "convention": RAMIFICATION_CONVENTION,
                    }),
                );
            } else {
                let _ = writeln!(out, "{g}");
                for v in &g.places {
                    let _ = writeln!(out, "place {}: root in {}", v.index(), place_interval(v));
                }
                let _ = writeln!(out, "convention: {RAMIFICATION_CONVENTION}");
            }
            Ok(EXIT_OK)
        }
        Command::Witness { ext, place, json } => {
            let l = load_extension(&ext)?;
            warn_field(l.base(), err);
            let v = place_arg(l.base(), place)?;
            let w = witness_non_norm(&l, &v).at(|| "--place".to_string())?;
            let recs = symbols_to_records(&w);
            let _ = writeln!(out, "{}", serde_json::to_string(&recs).expect("json"));
            if !json {
                let _ = writeln!(
                    err,
                    "certified: not a norm (n = 1), failing exactly at place {place}"
                );
            }
            Ok(EXIT_OK)
        }
    }
}
