//! The subcommands, writing to any sink so they can be driven in-process.

use std::io::Write;
use std::path::Path;

use serde_json::json;

use super::descriptor::{Model, ModelDescriptor};
use super::expr::render;
use super::report::{all_passed, write_jsonl, write_table};
use super::suites::run_suite;
use crate::error::{Error, Result};
use crate::hodge::hodge_star;
use crate::torus::FourierForm;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Format {
    Json,
    Table,
}

fn io(e: std::io::Error) -> Error {
    Error::Descriptor(format!("write failed: {e}"))
}

pub fn load(path: &Path, seed: Option<u64>) -> Result<Model> {
    let mut model = ModelDescriptor::load(path)?.elaborate()?;
    if let Some(s) = seed {
        model.seed = s;
    }
    Ok(model)
}

/// Returns whether every check passed.
pub fn verify(model: &Model, suite: Option<&str>, format: Format, out: &mut impl Write) -> Result<bool> {
    let suite = suite.or(model.suite.as_deref()).unwrap_or("all");
    let records = run_suite(model, suite)?;
    match format {
        Format::Json => write_jsonl(&records, out),
        Format::Table => write_table(&records, out),
    }
    .map_err(io)?;
    Ok(all_passed(&records))
}

pub fn decompose(model: &Model, expr: &str, deformed_by: Option<&str>, out: &mut impl Write) -> Result<()> {
    let x = model.parse_constant(expr)?;
    match deformed_by {
        None => {
            for degree in x.degrees() {
                let d = model.torus.model().decompose(&x.degree_component(degree))?;
                for (j, beta) in d.parts() {
                    writeln!(out, "degree {degree}  L^{j}: {}", render(&FourierForm::constant(beta.clone()))).map_err(io)?;
                }
            }
        }
        Some(v) => {
            let v = model.parse_constant(v)?;
            let deformed = model.torus.model().deform(&v)?;
            for degree in x.degrees() {
                let d = deformed.decompose(&x.degree_component(degree).lift())?;
                for (j, beta) in d.parts() {
                    let body = FourierForm::constant(beta.body());
                    let slope = FourierForm::constant(beta.slope());
                    writeln!(out, "degree {degree}  L_eps^{j}: {} + eps*({})", render(&body), render(&slope)).map_err(io)?;
                }
            }
        }
    }
    Ok(())
}

pub fn star(model: &Model, expr: &str, out: &mut impl Write) -> Result<()> {
    let x = model.parse(expr)?;
    let starred = if x.is_constant() {
        FourierForm::constant(hodge_star(&x.mean(), model.torus.star_context()))
    } else {
        model.torus.star(&x)
    };
    writeln!(out, "{}", render(&starred)).map_err(io)
}

/// `h(v, αωʲ)`, its closed form and the harmonicity verdict, as one JSON
/// object.
pub fn hmap(model: &Model, alpha: &str, v: &str, j: usize, out: &mut impl Write) -> Result<()> {
    let ctx = &model.torus;
    let alpha = model.parse(alpha)?;
    let v = model.parse(v)?;
    let x = alpha.wedge_constant(&ctx.model().omega_pow(j));
    let value = ctx.h_map(&v, &x)?;
    let closed = ctx.h_closed_form(&alpha, j, &v)?;
    let cert = ctx.stays_harmonic(&alpha, j, &v)?;
    let report = json!({
        "h": render(&value.h),
        "h_tilde": render(&value.h_tilde),
        "closed_form": render(&closed),
        "closed_form_agrees": closed == value.h,
        "stays_harmonic": cert.holds,
        "product": render(&cert.product),
        "product_harmonic": cert.product_harmonic,
    });
    writeln!(out, "{report}").map_err(io)
}
