//! Rendering. Tables print probabilities with 4 decimals and expected sizes
//! with 2; CSV prints 6 decimals throughout.

use std::io::Write;

use bf_twostage::{CalibratedDesign, OperatingCharacteristics, ScanRow, SimonDesign, TwoStageDesign};

use crate::config::OutputFormat;
use crate::CliError;

pub fn design_row(
    out: &mut impl Write,
    d: &CalibratedDesign,
    format: OutputFormat,
) -> Result<(), CliError> {
    let oc = &d.oc;
    match format {
        OutputFormat::Table => {
            writeln!(out, "{:>4} {:>4} {:>8} {:>8} {:>8} {:>8}", "n1", "n2", "type-I", "power", "E[N|H0]", "PCE(p0)")?;
            writeln!(
                out,
                "{:>4} {:>4} {:>8.4} {:>8.4} {:>8.2} {:>8.4}",
                d.design.n1, d.design.n2, oc.type_i_adjusted, oc.power_adjusted, oc.e_n_h0, oc.pce_p0
            )?;
        }
        OutputFormat::Csv => {
            writeln!(out, "n1,n2,typeI_adj,power_adj,en_h0,pce")?;
            writeln!(
                out,
                "{},{},{:.6},{:.6},{:.6},{:.6}",
                d.design.n1, d.design.n2, oc.type_i_adjusted, oc.power_adjusted, oc.e_n_h0, oc.pce_p0
            )?;
        }
    }
    Ok(())
}

pub fn characteristics(
    out: &mut impl Write,
    design: &TwoStageDesign,
    oc: &OperatingCharacteristics,
    format: OutputFormat,
) -> Result<(), CliError> {
    let rows: [(&str, f64, f64); 8] = [
        ("unadjusted", oc.type_i_unadjusted, oc.power_unadjusted),
        ("futility_erased", oc.futility_erased_type_i, oc.futility_erased_power),
        ("adjusted", oc.type_i_adjusted, oc.power_adjusted),
        ("interim_efficacy", oc.branch_h0.efficacy, oc.branch_h1.efficacy),
        ("interim_indecisive", oc.branch_h0.indecisive, oc.branch_h1.indecisive),
        ("interim_futility", oc.branch_h0.futility, oc.branch_h1.futility),
        ("expected_n", oc.e_n_h0, oc.e_n_h1),
        ("pce_p0", oc.pce_p0, oc.pce_p0),
    ];
    match format {
        OutputFormat::Table => {
            writeln!(
                out,
                "design n1 = {}, n2 = {}, k = {:.4}, k_f = {:.4}",
                design.n1, design.n2, design.k, design.k_f
            )?;
            writeln!(out, "{:<20} {:>10} {:>10}", "", "H0", "H1")?;
            for (name, h0, h1) in rows {
                if name == "expected_n" {
                    writeln!(out, "{name:<20} {h0:>10.2} {h1:>10.2}")?;
                } else {
                    writeln!(out, "{name:<20} {h0:>10.4} {h1:>10.4}")?;
                }
            }
            if oc.branch_h0.futility == 0.0 && oc.branch_h1.futility == 0.0 {
                writeln!(
                    out,
                    "note: no interim count reaches k_f; adjusted equals unadjusted"
                )?;
            }
        }
        OutputFormat::Csv => {
            writeln!(out, "quantity,h0,h1")?;
            for (name, h0, h1) in rows {
                writeln!(out, "{name},{h0:.6},{h1:.6}")?;
            }
        }
    }
    Ok(())
}

pub fn scan(out: &mut impl Write, rows: &[ScanRow], format: OutputFormat) -> Result<(), CliError> {
    match format {
        OutputFormat::Csv => {
            writeln!(out, "n1,power_adj,typeI_adj,pce,en_h0,feasible")?;
            for r in rows {
                writeln!(
                    out,
                    "{},{:.6},{:.6},{:.6},{:.6},{}",
                    r.n1, r.power_adjusted, r.type_i_adjusted, r.pce_p0, r.e_n_h0, r.feasible
                )?;
            }
        }
        OutputFormat::Table => {
            writeln!(
                out,
                "{:>4} {:>8} {:>8} {:>8} {:>8} {:>8}",
                "n1", "power", "type-I", "PCE(p0)", "E[N|H0]", "feasible"
            )?;
            for r in rows {
                writeln!(
                    out,
                    "{:>4} {:>8.4} {:>8.4} {:>8.4} {:>8.2} {:>8}",
                    r.n1, r.power_adjusted, r.type_i_adjusted, r.pce_p0, r.e_n_h0, r.feasible
                )?;
            }
        }
    }
    Ok(())
}

pub fn simon(
    out: &mut impl Write,
    minimax: &SimonDesign,
    optimal: &SimonDesign,
    format: OutputFormat,
) -> Result<(), CliError> {
    let designs = [("minimax", minimax), ("optimal", optimal)];
    match format {
        OutputFormat::Table => {
            writeln!(
                out,
                "{:<8} {:>4} {:>4} {:>4} {:>4} {:>8} {:>8} {:>8} {:>8}",
                "design", "r1", "n1", "r", "n2", "type-I", "power", "E[N|H0]", "PET(p0)"
            )?;
            for (name, d) in designs {
                writeln!(
                    out,
                    "{name:<8} {:>4} {:>4} {:>4} {:>4} {:>8.4} {:>8.4} {:>8.2} {:>8.4}",
                    d.r1, d.n1, d.r, d.n2, d.alpha_attained, d.power_attained, d.e_n_h0, d.pet_p0
                )?;
            }
        }
        OutputFormat::Csv => {
            writeln!(out, "design,r1,n1,r,n2,typeI,power,en_h0,pet")?;
            for (name, d) in designs {
                writeln!(
                    out,
                    "{name},{},{},{},{},{:.6},{:.6},{:.6},{:.6}",
                    d.r1, d.n1, d.r, d.n2, d.alpha_attained, d.power_attained, d.e_n_h0, d.pet_p0
                )?;
            }
        }
    }
    Ok(())
}
