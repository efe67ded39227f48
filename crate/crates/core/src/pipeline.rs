//! The staged pipeline: closure, augmentation, saturation, then on demand
//! reduction and scenario checking.

use crate::error::{Error, Result};
use crate::logic::{augment, AugmentedTheory};
use crate::model::{AtomStyle, KnowledgeBase, Scenario};
use crate::reduce::optimize;
use crate::saturation::{ont_closure, saturate_with, ExplanationSet, OntClosure, SaturationConfig};
use crate::verify::{verify, Verification};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    /// Skip eager weak simplification during saturation.
    pub raw: bool,
    pub max_atoms: usize,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            raw: false,
            max_atoms: SaturationConfig::default().max_atoms,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Pipeline {
    kb: KnowledgeBase,
    closure: OntClosure,
    wstar: AugmentedTheory,
    derived: ExplanationSet,
    iterations: usize,
}

impl Pipeline {
    pub fn run(kb: KnowledgeBase, options: &Options) -> Result<Self> {
        let closure = ont_closure(&kb);
        let wstar = augment(&kb, &closure);
        let config = SaturationConfig {
            simplify: !options.raw,
            max_atoms: options.max_atoms,
        };
        let sat = saturate_with(&kb, &closure, &wstar, &config)?;
        Ok(Self {
            kb,
            closure,
            wstar,
            derived: sat.atoms,
            iterations: sat.iterations,
        })
    }

    pub fn kb(&self) -> &KnowledgeBase {
        &self.kb
    }

    pub fn closure(&self) -> &OntClosure {
        &self.closure
    }

    pub fn theory(&self) -> &AugmentedTheory {
        &self.wstar
    }

    pub fn derived(&self) -> &ExplanationSet {
        &self.derived
    }

    pub fn iterations(&self) -> usize {
        self.iterations
    }

    pub fn optimized(&self) -> ExplanationSet {
        optimize(&self.derived, &self.wstar)
    }

    /// Checks `atoms` (typically [`Pipeline::optimized`] or
    /// [`Pipeline::derived`]) against `scenario`, whose symbols must all be
    /// declared in the knowledge base.
    pub fn verify(&self, atoms: &ExplanationSet, scenario: &Scenario) -> Result<Verification> {
        scenario
            .check_declared(&self.kb)
            .map_err(Error::Diagnostics)?;
        Ok(verify(atoms, scenario))
    }

    /// Intermediate relations as ASP facts, for comparison with an external
    /// solver's answer sets.
    pub fn stage_dump(&self) -> String {
        let mut out = String::from("% stage: ontt\n");
        for (a, b) in self.closure.pairs() {
            out.push_str(&format!("ontt({a},{b}).\n"));
        }
        out.push_str("% stage: augmented theory\n");
        out.push_str(&self.wstar.to_source());
        out.push_str(&format!(
            "% stage: ecSet ({} atoms, {} iterations)\n",
            self.derived.len(),
            self.iterations
        ));
        for a in &self.derived {
            out.push_str(&crate::model::format_atom(a, AtomStyle::EcSet));
            out.push_str(".\n");
        }
        out
    }
}
