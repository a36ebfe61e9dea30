//! Group sources: the built-in catalog, or a JSON file (`-` reads stdin).

use std::io::Read;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::Args;
use subrack_core::catalog;
use subrack_core::formats::{CayleyFile, PermutationFile};
use subrack_core::group::{ValidationOptions, DEFAULT_CLOSURE_BOUND};
use subrack_core::FiniteGroup;

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Built-in group (see `subrack catalog`).
    #[arg(long, value_name = "NAME")]
    catalog: Option<String>,
    /// JSON Cayley table: {"order", "table", "labels"?}.
    #[arg(long, value_name = "PATH")]
    cayley: Option<PathBuf>,
    /// JSON permutation generators: {"degree", "generators"}.
    #[arg(long, value_name = "PATH")]
    perm: Option<PathBuf>,
}

#[derive(Args)]
pub struct GroupSource {
    #[command(flatten)]
    source: Source,
    /// Seed for randomized associativity sampling of large Cayley tables.
    #[arg(long)]
    seed: Option<u64>,
    /// Maximum order when closing permutation generators.
    #[arg(long, default_value_t = DEFAULT_CLOSURE_BOUND)]
    closure_bound: usize,
}

fn read_source(path: &Path) -> anyhow::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn display_name(path: &Path) -> String {
    if path.as_os_str() == "-" {
        "stdin".into()
    } else {
        path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
    }
}

impl GroupSource {
    /// The validated group and the name used in reports.
    pub fn load(&self) -> anyhow::Result<(FiniteGroup, String)> {
        if let Some(name) = &self.source.catalog {
            let Some(entry) = catalog::lookup(name) else {
                bail!("no catalog group named {name:?} (try `subrack catalog`)");
            };
            return Ok((entry.group()?, entry.name.to_string()));
        }
        if let Some(path) = &self.source.cayley {
            let file: CayleyFile = serde_json::from_str(&read_source(path)?)
                .with_context(|| format!("parsing Cayley table {}", path.display()))?;
            let mut opts = ValidationOptions::default();
            if let Some(seed) = self.seed {
                opts.seed = seed;
            }
            let group = file.into_group(&opts).with_context(|| format!("validating {}", path.display()))?;
            return Ok((group, display_name(path)));
        }
        if let Some(path) = &self.source.perm {
            let file: PermutationFile = serde_json::from_str(&read_source(path)?)
                .with_context(|| format!("parsing permutation generators {}", path.display()))?;
            let group = file.into_group(self.closure_bound).with_context(|| format!("closing {}", path.display()))?;
            return Ok((group, display_name(path)));
        }
        bail!("no group source given")
    }
}
