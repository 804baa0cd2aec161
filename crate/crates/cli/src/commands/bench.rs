use anyhow::{Context, Result};
use clap::Args;
use qrep_core::analytics::exact_logical_error;
use qrep_core::calib::{find_embeddings, noise_from_snapshot};
use qrep_core::codes::{logical_error_experiment, EncodingLayout};
use qrep_core::qsim::{sample_distribution, Distribution, NoiseModel, ReadoutError};
use qrep_core::rng::{derive_seed, substream};

use crate::spec::{parse_list, NoiseSource, NoiseSpec};
use crate::{csv_writer, Common};

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[command(flatten)]
    pub common: Common,
    /// Repetition counts for the chain and split layouts.
    #[arg(long, default_value = "2,4")]
    pub n_rep: String,
    /// Repetition counts for the circular layout [default: 10 with a snapshot, 4 otherwise].
    #[arg(long)]
    pub circular: Option<String>,
    /// Layouts (embeddings or Gaussian draws) averaged per encoding.
    #[arg(long, default_value_t = 10)]
    pub max_layouts: usize,
}

/// One realisation of an encoding together with its noise.
struct Instance {
    layout: Option<EncodingLayout>,
    qubit: usize,
    noise: NoiseModel,
}

struct Row {
    encoding: String,
    basis: u8,
    mean: f64,
    std: f64,
    discard: f64,
}

fn mean_std(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let m = v.iter().sum::<f64>() / n;
    let var = v.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / n;
    (m, var.sqrt())
}

fn instances(
    source: &NoiseSource,
    template: Option<&EncodingLayout>,
    max_layouts: usize,
    seed: Option<u64>,
    tag: u64,
) -> Result<Vec<Instance>> {
    match source {
        NoiseSource::Snapshot(s) => match template {
            None => s
                .qubits
                .iter()
                .map(|q| {
                    let mut noise = NoiseModel::new();
                    noise.set_readout(q.index, ReadoutError::new(q.p0r, q.p1r)?)?;
                    Ok(Instance {
                        layout: None,
                        qubit: q.index,
                        noise,
                    })
                })
                .collect(),
            Some(t) => find_embeddings(s, t, max_layouts)?
                .into_iter()
                .map(|l| {
                    let noise = noise_from_snapshot(s, &l)?;
                    Ok(Instance {
                        layout: Some(l),
                        qubit: 0,
                        noise,
                    })
                })
                .collect(),
        },
        NoiseSource::Spec(spec) => {
            let u = spec.uniform()?;
            let Some(layout) = template else {
                let mut noise = NoiseModel::new();
                noise.set_readout(0, u.readout)?;
                return Ok(vec![Instance {
                    layout: None,
                    qubit: 0,
                    noise,
                }]);
            };
            let draws = match spec {
                NoiseSpec::Gaussian { dist, .. } if dist.sigma > 0.0 => {
                    let seed = seed.ok_or(crate::CliError::MissingSeed)?;
                    (0..max_layouts as u64)
                        .map(|k| {
                            let mut rng = substream(derive_seed(seed, tag), k);
                            layout.cnot_pairs().iter().map(|_| dist.sample(&mut rng)).collect()
                        })
                        .collect()
                }
                _ => vec![vec![u.p_cnot; layout.cnot_pairs().len()]],
            };
            draws
                .into_iter()
                .map(|rates: Vec<f64>| {
                    let mut noise = NoiseModel::new();
                    for ((a, b), p) in layout.cnot_pairs().into_iter().zip(rates) {
                        noise.set_cnot(a, b, p)?;
                    }
                    for q in layout.qubits() {
                        noise.set_readout(q, u.readout)?;
                    }
                    Ok(Instance {
                        layout: Some(layout.clone()),
                        qubit: 0,
                        noise,
                    })
                })
                .collect()
        }
    }
}

/// Logical error and discard fraction of one instance.
fn evaluate(inst: &Instance, basis: u8, shots: Option<usize>, seed: u64) -> Result<(f64, f64)> {
    match (&inst.layout, shots) {
        (Some(l), None) => {
            let e = exact_logical_error(l, &inst.noise, basis)?;
            Ok((e.error, e.discard))
        }
        (Some(l), Some(shots)) => {
            let o = logical_error_experiment(l, basis, &inst.noise, shots, seed)?;
            Ok((o.error_rate, o.discard_fraction))
        }
        (None, None) => {
            let r = inst.noise.readout(inst.qubit)?;
            Ok((r.flip_probability(basis == 1), 0.0))
        }
        (None, Some(shots)) => {
            let r = inst.noise.readout(inst.qubit)?;
            let counts = sample_distribution(&Distribution::delta(1, basis.into())?, &[r], shots, seed)?;
            Ok((counts.get(u64::from(1 - basis)) as f64 / shots as f64, 0.0))
        }
    }
}

pub fn run(args: &BenchArgs) -> Result<()> {
    let c = &args.common;
    let source = c.noise_source()?;
    let seed = match c.shots {
        Some(_) => Some(c.seed()?),
        None => c.seed,
    };
    let snapshot = matches!(source, NoiseSource::Snapshot(_));
    let circular: Vec<usize> = match &args.circular {
        Some(s) => parse_list(s).context("--circular")?,
        None => vec![if snapshot { 10 } else { 4 }],
    };
    let mut templates: Vec<Option<EncodingLayout>> = vec![None];
    for n in parse_list::<usize>(&args.n_rep).context("--n-rep")? {
        templates.push(Some(EncodingLayout::chain(n)?));
        templates.push(Some(EncodingLayout::split(n)?));
    }
    for n in circular {
        templates.push(Some(EncodingLayout::circular(n)?));
    }

    let mut rows = Vec::new();
    for (t, template) in templates.iter().enumerate() {
        let label = template.as_ref().map_or_else(|| "unencoded".to_string(), |l| l.label());
        let insts = match instances(&source, template.as_ref(), args.max_layouts, seed, t as u64) {
            Ok(i) => i,
            Err(e)
                if snapshot
                    && e.downcast_ref::<qrep_core::Error>()
                        .is_some_and(|e| e.name() == "InvalidArgument") =>
            {
                eprintln!("skipping {label}: {e}");
                continue;
            }
            Err(e) => return Err(e),
        };
        for basis in 0..2u8 {
            let mut errs = Vec::with_capacity(insts.len());
            let mut discards = Vec::with_capacity(insts.len());
            for (k, inst) in insts.iter().enumerate() {
                let s = derive_seed(
                    derive_seed(seed.unwrap_or(0), t as u64),
                    2 * k as u64 + u64::from(basis),
                );
                let (e, d) = evaluate(inst, basis, c.shots, s)?;
                errs.push(e);
                discards.push(d);
            }
            let (mean, std) = mean_std(&errs);
            rows.push(Row {
                encoding: label.clone(),
                basis,
                mean,
                std,
                discard: mean_std(&discards).0,
            });
        }
    }

    let mut w = csv_writer(c.out.as_deref())?;
    w.write_record([
        "encoding",
        "basis_state",
        "mean_logical_error",
        "std_logical_error",
        "discard_fraction",
    ])?;
    for r in rows {
        w.serialize((r.encoding, r.basis, r.mean, r.std, r.discard))?;
    }
    w.flush()?;
    Ok(())
}
