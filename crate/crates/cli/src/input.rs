use std::fs;
use std::path::Path;

use anyhow::Context;
use periodica::{AnnularDiagram, Error, LinkDiagram, PeriodicTangleCode, PlanarDiagram, Skeleton};

/// A diagram file: PD text, or a periodic tangle code in JSON.
pub enum Input {
    Pd(PlanarDiagram),
    Ptc(PeriodicTangleCode, AnnularDiagram),
}

impl Input {
    pub fn load(path: &Path) -> anyhow::Result<Input> {
        let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        if text.trim_start().starts_with('{') {
            let code = PeriodicTangleCode::parse(&text)
                .map_err(Error::from)
                .with_context(|| format!("{} is not a valid periodic tangle code", path.display()))?;
            let full = code.quotient(0).map_err(Error::from)?;
            Ok(Input::Ptc(code, full))
        } else {
            let pd = PlanarDiagram::parse(&text)
                .map_err(Error::from)
                .with_context(|| format!("{} is not a valid PD code", path.display()))?;
            Ok(Input::Pd(pd))
        }
    }

    pub fn code(&self) -> Option<&PeriodicTangleCode> {
        match self {
            Input::Pd(_) => None,
            Input::Ptc(code, _) => Some(code),
        }
    }

    pub fn skeleton(&self) -> &Skeleton {
        match self {
            Input::Pd(d) => d.skeleton(),
            Input::Ptc(_, full) => full.skeleton(),
        }
    }
}

/// Loads a file that must be a periodic tangle code.
pub fn load_code(path: &Path, command: &str) -> anyhow::Result<PeriodicTangleCode> {
    match Input::load(path)? {
        Input::Ptc(code, _) => Ok(code),
        Input::Pd(_) => Err(Error::Malformed(format!(
            "`{command}` needs a periodic tangle code (JSON), {} is a PD code",
            path.display()
        ))
        .into()),
    }
}
