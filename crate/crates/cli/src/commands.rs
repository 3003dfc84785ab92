use std::io::{self, Write};

use simprep_core::covers::{intersection_nonempty, BoxCoverOracle, CoverOracle};
use simprep_core::persistence::barcode;
use simprep_core::realroots::{parse_rational, Formula};
use simprep_core::replacement::{simplicial_replacement, BuildOptions};
use simprep_core::sa_filtration::{sa_barcode_1d, SubLevelProblem};
use simprep_core::simplicial::nerve;
use simprep_core::{TupleOfFormulas, UPoly};

use crate::args::{
    BarcodeArgs, BettiArgs, Cli, Command, Format, Global, NerveArgs, ReplaceArgs, SaBarcodeArgs,
};
use crate::error::{CliError, CliResult};
use crate::files::{load_catalog, load_complex, load_filtration, load_scene};
use crate::output::{
    betti_line, write_artifact, write_artifact_if_requested, BarcodeArtifact, BettiArtifact,
    NerveArtifact, ReplaceArtifact, SaBarcodeArtifact,
};

pub fn run(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Replace(a) => replace(&cli.global, a),
        Command::Barcode(a) => barcode_cmd(&cli.global, a),
        Command::SaBarcode(a) => sa_barcode(&cli.global, a),
        Command::Nerve(a) => nerve_cmd(&cli.global, a),
        Command::Betti(a) => betti(&cli.global, a),
    }
}

fn print_line(line: &str) -> CliResult<()> {
    writeln!(io::stdout().lock(), "{line}")?;
    Ok(())
}

fn replace(global: &Global, args: &ReplaceArgs) -> CliResult<()> {
    let opts = BuildOptions {
        budget: global.budget,
        ..BuildOptions::default()
    };
    let (oracle, default_labels, phi_of): (Box<dyn CoverOracle>, Vec<String>, bool) =
        match (&args.scene, &args.catalog) {
            (Some(path), _) => {
                let scene = load_scene(path)?;
                let labels = scene.labels().cloned().collect();
                (Box::new(BoxCoverOracle::new(scene)), labels, true)
            }
            (None, Some(path)) => {
                let c = load_catalog(path)?;
                (Box::new(c.oracle), c.labels, false)
            }
            (None, None) => {
                return Err(CliError::Schema(
                    "one of --scene or --catalog is required".into(),
                ))
            }
        };
    let labels = if args.labels.is_empty() {
        default_labels
    } else {
        args.labels.clone()
    };
    let phi = if phi_of {
        TupleOfFormulas::covered(labels.iter().cloned(), oracle.as_ref())?
    } else {
        TupleOfFormulas::identity(labels.iter().cloned())?
    };
    let r = simplicial_replacement(&phi, args.ell, oracle.as_ref(), &opts)?;
    let betti = if r.complex.is_empty() {
        Vec::new()
    } else {
        r.betti_numbers()
    };
    write_artifact_if_requested(
        global,
        Format::Json,
        &ReplaceArtifact {
            ell: args.ell,
            labels,
            betti: betti.clone(),
            complex: r.complex.to_json(),
            poset: r.poset.to_json(),
        },
    )?;
    print_line(&betti_line(&betti))
}

fn barcode_cmd(global: &Global, args: &BarcodeArgs) -> CliResult<()> {
    let f = load_filtration(&args.filtration)?;
    let bars = barcode(&f, args.ell);
    write_artifact(global, Format::Csv, &BarcodeArtifact::new(&bars))
}

fn sa_barcode(global: &Global, args: &SaBarcodeArgs) -> CliResult<()> {
    let phi = Formula::parse(&args.set)?;
    let poly = UPoly::parse(&args.poly)?;
    let mut prob = SubLevelProblem::new(phi, poly, args.ell);
    if let Some(r) = &args.radius {
        prob = prob.with_radius(parse_rational(r)?);
    }
    let bars = sa_barcode_1d(&prob)?;
    write_artifact(global, Format::Csv, &SaBarcodeArtifact::new(&bars))
}

fn nerve_cmd(global: &Global, args: &NerveArgs) -> CliResult<()> {
    let scene = load_scene(&args.scene)?;
    let labels: Vec<String> = scene.labels().cloned().collect();
    let k = nerve(labels.len(), |idx| {
        let sub: Vec<String> = idx.iter().map(|&i| labels[i].clone()).collect();
        intersection_nonempty(&scene, &sub)
    })?;
    let betti = match (k.dimension(), args.ell) {
        (None, _) => Vec::new(),
        (Some(_), Some(l)) => k.betti_numbers(l),
        (Some(d), None) => k.betti_numbers(d),
    };
    write_artifact_if_requested(
        global,
        Format::Json,
        &NerveArtifact {
            labels,
            betti: betti.clone(),
            complex: k.to_json(),
        },
    )?;
    print_line(&betti_line(&betti))
}

fn betti(global: &Global, args: &BettiArgs) -> CliResult<()> {
    let k = load_complex(&args.complex)?;
    let betti = match (k.dimension(), args.ell) {
        (None, _) => Vec::new(),
        (Some(_), Some(l)) => k.betti_numbers(l),
        (Some(d), None) => k.betti_numbers(d),
    };
    write_artifact_if_requested(
        global,
        Format::Json,
        &BettiArtifact {
            betti: betti.clone(),
        },
    )?;
    print_line(&betti_line(&betti))
}
