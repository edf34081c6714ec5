use std::process::ExitCode;

use anyhow::anyhow;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use vertpairs_core::algebra::ring::rational_powi;
use vertpairs_core::gw::{
    gw_descendent_factor, gw_vertical, k_matrix, l_matrix, mp_invariant, pipeline_invariant,
    spin_hurwitz_vertical,
};
use vertpairs_core::identities::{
    appendix_lhs, c_coefficients, leading_term_holds, pix_identity_check, solve_c_unique,
};
use vertpairs_core::pairs::{
    parse_insertions, total_alpha, vertical_bruteforce, vertical_closed_descendents, ChiParity,
    ClosedForm, Insertion, SurfaceGeometry,
};
use vertpairs_core::verify::{run_suite, Suite};
use vertpairs_core::{
    int, Error, GaussianRational, HalfLaurentSeries, Rational, SeriesJson, UPowerSeries,
};

const CONDITIONAL: &str = "conditional on the correspondence-matrix conjecture";

#[derive(Parser)]
#[command(
    name = "vertpairs",
    version,
    about = "Vertical stable-pairs and Gromov-Witten series of local surfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(clap::Args)]
struct Surface {
    /// Multiple of the canonical class.
    #[arg(long)]
    d: i64,
    /// Genus of the canonical curve.
    #[arg(long)]
    h: i64,
    #[arg(long, value_parser = parse_parity)]
    chi_parity: ChiParity,
}

impl Surface {
    fn geometry(&self) -> Result<SurfaceGeometry, Error> {
        SurfaceGeometry::new(self.h, self.chi_parity)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Closed vertical stable-pairs series, optionally checked against the brute-force sum.
    Pairs {
        #[command(flatten)]
        surface: Surface,
        /// Descendents as `alpha:pairing`, comma separated (e.g. `1:1,2:3/2`).
        #[arg(long, value_parser = parse_insertion_list, default_value = "")]
        insertions: InsertionList,
        #[arg(long)]
        oracle: bool,
        /// `q`-window `LO:HI` for the oracle comparison or a quotient expansion.
        #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
        window: Option<(i64, i64)>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Gromov-Witten `u`-series below `u^order`.
    Gw {
        #[command(flatten)]
        surface: Surface,
        #[arg(long)]
        order: i64,
        #[arg(long, value_parser = parse_insertion_list, default_value = "")]
        insertions: InsertionList,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Vertical spin Hurwitz number.
    Hurwitz {
        #[command(flatten)]
        surface: Surface,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Compare the full pipeline with the degree-one/two divisor formulas.
    MpCheck {
        #[command(flatten)]
        surface: Surface,
        #[arg(long, value_parser = parse_insertion_list, default_value = "")]
        insertions: InsertionList,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Correspondence matrices K and L with the inverse check.
    Matrices {
        #[arg(long)]
        size: usize,
    },
    /// Sine-ratio identity report for every alpha up to the bound.
    Appendix {
        #[arg(long)]
        alpha_max: i64,
        /// Also check the bivariate generating identity.
        #[arg(long)]
        pix: bool,
    },
    /// Run a verification grid.
    Verify {
        #[arg(long, value_parser = parse_suite, default_value = "all")]
        suite: Suite,
    },
}

type InsertionList = Vec<Insertion>;

fn parse_parity(s: &str) -> Result<ChiParity, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_insertion_list(s: &str) -> Result<InsertionList, String> {
    parse_insertions(s).map_err(|e| e.to_string())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s.split_once(':').ok_or("window must look like LO:HI")?;
    let lo = lo
        .trim()
        .parse()
        .map_err(|_| format!("bad window start {lo:?}"))?;
    let hi = hi
        .trim()
        .parse()
        .map_err(|_| format!("bad window end {hi:?}"))?;
    if lo > hi {
        return Err(format!("empty window {lo}:{hi}"));
    }
    Ok((lo, hi))
}

/// Command outcome: printed output plus whether every check passed.
struct Outcome {
    output: String,
    passed: bool,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Self {
            output,
            passed: true,
        }
    }
}

fn with_t(series: &HalfLaurentSeries, t_power: i64) -> HalfLaurentSeries {
    series.map_coeffs(|c| c.shift_t(t_power))
}

fn q_json(series: &HalfLaurentSeries) -> Value {
    serde_json::to_value(SeriesJson::from(series)).expect("series JSON is always serializable")
}

fn u_json(series: &UPowerSeries<GaussianRational>) -> Value {
    serde_json::to_value(SeriesJson::from(series)).expect("series JSON is always serializable")
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values always serialize")
}

fn pairs(
    surface: &Surface,
    insertions: &[Insertion],
    oracle: bool,
    window: Option<(i64, i64)>,
    format: Format,
) -> anyhow::Result<Outcome> {
    let geom = surface.geometry()?;
    let (t_power, form) = vertical_closed_descendents(&geom, surface.d, insertions)?;
    let (mut text, mut value) = match &form {
        ClosedForm::Laurent(s) => {
            let s = with_t(s, t_power);
            (s.to_text(), json!({ "series": q_json(&s) }))
        }
        ClosedForm::Quotient {
            numerator,
            denominator,
        } => {
            let num = with_t(numerator, t_power);
            let mut text = format!("({}) / ({})", num.to_text(), denominator.to_text());
            let mut value =
                json!({ "numerator": q_json(&num), "denominator": q_json(denominator) });
            if let Some((lo, hi)) = window {
                let expanded = with_t(&form.window(lo, hi)?, t_power);
                text.push_str(&format!("\n= {}", expanded.to_text()));
                value["expansion"] = q_json(&expanded);
            }
            (text, value)
        }
    };
    let mut passed = true;
    if oracle {
        let (lo, hi) = window.ok_or_else(|| anyhow!("--oracle needs --window LO:HI"))?;
        let (brute_t, brute) = vertical_bruteforce(&geom, surface.d, insertions, lo, hi)?;
        passed = brute_t == t_power && brute.agrees_on(&form.window(lo, hi)?, lo, hi)?;
        let brute = with_t(&brute, brute_t);
        text.push_str(&format!(
            "\noracle on {lo}..={hi}: {}\n{}",
            if passed { "agrees" } else { "DISAGREES" },
            brute.to_text()
        ));
        value["oracle"] = json!({ "lo": lo, "hi": hi, "agrees": passed, "series": q_json(&brute) });
    }
    let output = match format {
        Format::Text => text,
        Format::Json => pretty(&value),
    };
    Ok(Outcome { output, passed })
}

fn gw(
    surface: &Surface,
    order: i64,
    insertions: &[Insertion],
    format: Format,
) -> anyhow::Result<Outcome> {
    let geom = surface.geometry()?;
    let d = surface.d;
    let mut series = gw_vertical(&geom, d, order)?;
    let t_power = total_alpha(insertions);
    if !insertions.is_empty() {
        let size = insertions
            .iter()
            .map(|i| i.alpha as usize + 1)
            .max()
            .unwrap_or(1);
        let (_, factor) = gw_descendent_factor(d, insertions, order, &l_matrix(size))?;
        let scale = insertions
            .iter()
            .map(|i| i.pairing.clone())
            .product::<Rational>()
            * rational_powi(&int(d), insertions.len() as i64)?;
        series = series
            .mul_capped(&factor, Some(order))
            .scale_rational(&scale);
    }
    let conditional = !insertions.is_empty();
    let output = match format {
        Format::Text => {
            let body = series.to_text("u");
            let mut out = if t_power == 0 {
                body
            } else {
                format!("t^{t_power} * ({body})")
            };
            if conditional {
                out.push_str(&format!("\n({CONDITIONAL})"));
            }
            out
        }
        Format::Json => pretty(&json!({
            "t_power": t_power,
            "series": u_json(&series),
            "conjecture_conditional": conditional,
        })),
    };
    Ok(Outcome::ok(output))
}

fn hurwitz(surface: &Surface, format: Format) -> anyhow::Result<Outcome> {
    let value = spin_hurwitz_vertical(&surface.geometry()?, surface.d)?;
    Ok(Outcome::ok(match format {
        Format::Text => value.to_string(),
        Format::Json => pretty(&json!({ "value": value.to_string() })),
    }))
}

fn mp_check(
    surface: &Surface,
    insertions: &[Insertion],
    format: Format,
) -> anyhow::Result<Outcome> {
    let geom = surface.geometry()?;
    let d = surface.d;
    if d != 1 && d != 2 {
        return Err(Error::InvalidArgument(format!("mp-check needs --d 1 or 2, got {d}")).into());
    }
    let formula = mp_invariant(&geom, d, insertions)?;
    let order = 2 * (d * geom.kappa_sq() + total_alpha(insertions)) + 1;
    let pipeline = pipeline_invariant(&geom, d, insertions, order)?;
    let passed = pipeline == formula;
    let output = match format {
        Format::Text => format!(
            "consistent: {passed}\npipeline: {pipeline}\nformula: {formula}\n({CONDITIONAL})"
        ),
        Format::Json => pretty(&json!({
            "consistent": passed,
            "pipeline": pipeline.to_string(),
            "formula": formula.to_string(),
            "conjecture_conditional": true,
        })),
    };
    Ok(Outcome { output, passed })
}

fn matrices(size: usize) -> anyhow::Result<Outcome> {
    if size == 0 {
        return Err(Error::InvalidArgument("--size must be positive".into()).into());
    }
    let k = k_matrix(size)?;
    let l = l_matrix(size);
    let passed = k.mul(&l)?.is_identity();
    Ok(Outcome {
        output: format!("K ({CONDITIONAL}):\n{k}\nL:\n{l}\nK L = identity: {passed}"),
        passed,
    })
}

fn appendix(alpha_max: i64, pix: bool) -> anyhow::Result<Outcome> {
    if alpha_max < 1 {
        return Err(Error::InvalidArgument("--alpha-max must be positive".into()).into());
    }
    let mut lines = Vec::new();
    let mut passed = true;
    for alpha in 1..=alpha_max {
        let lead = leading_term_holds(&appendix_lhs(alpha, 2 * alpha + 2)?, alpha)?;
        let c = c_coefficients(alpha)?;
        let solve = alpha < 2 || solve_c_unique(alpha)? == c;
        passed &= lead && solve;
        let coeffs: Vec<String> = c.c.iter().map(ToString::to_string).collect();
        lines.push(format!(
            "alpha={alpha} leading term: {lead}, unique solve: {solve}, c = [{}]",
            coeffs.join(", ")
        ));
    }
    if pix {
        let x_order = 2 * alpha_max + 2;
        let ok = pix_identity_check(alpha_max, x_order, alpha_max)?;
        passed &= ok;
        lines.push(format!(
            "bivariate identity below x^{x_order}, v^{alpha_max}: {ok}"
        ));
    }
    Ok(Outcome {
        output: lines.join("\n"),
        passed,
    })
}

fn verify(suite: Suite) -> Outcome {
    let report = run_suite(suite);
    Outcome {
        output: report.to_string(),
        passed: report.passed(),
    }
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    match cli.command {
        Command::Pairs {
            surface,
            insertions,
            oracle,
            window,
            format,
        } => pairs(&surface, &insertions, oracle, window, format),
        Command::Gw {
            surface,
            order,
            insertions,
            format,
        } => gw(&surface, order, &insertions, format),
        Command::Hurwitz { surface, format } => hurwitz(&surface, format),
        Command::MpCheck {
            surface,
            insertions,
            format,
        } => mp_check(&surface, &insertions, format),
        Command::Matrices { size } => matrices(size),
        Command::Appendix { alpha_max, pix } => appendix(alpha_max, pix),
        Command::Verify { suite } => Ok(verify(suite)),
    }
}

/// Bad input is a usage error (2); anything else that stops a computation
/// counts as a failure (1).
fn exit_code_for(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::InvalidArgument(_) | Error::Parse(_)) => 2,
        None if err.to_string().starts_with("--") => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            println!("{}", outcome.output);
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn windows_parse() {
        assert_eq!(parse_window("-10:10").unwrap(), (-10, 10));
        assert!(parse_window("3:1").is_err());
        assert!(parse_window("3").is_err());
    }

    #[test]
    fn usage_errors_map_to_two() {
        assert_eq!(exit_code_for(&Error::InvalidArgument("x".into()).into()), 2);
        assert_eq!(exit_code_for(&anyhow!("--oracle needs --window LO:HI")), 2);
        assert_eq!(exit_code_for(&Error::InexactInput.into()), 1);
    }
}
