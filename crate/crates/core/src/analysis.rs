//! The full computation, split into named stages so callers can time them.

use std::fmt;
use std::time::{Duration, Instant};

use crate::bichar::{bicharacter_matrix, compute_c_m, BicharacterMatrix, CharacterClasses, FixedPointCounter, TestElements};
use crate::chartable::{cartan_matrix, character_table, simple_dimensions, CartanMatrix, MonoidCharTable};
use crate::enumeration::MonoidTable;
use crate::error::Error;
use crate::green::GreenStructure;
use crate::radical::{radicals_of_idempotents, RadicalBasis};
use crate::schutz::SchutzData;
use crate::xform::Transformation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Stage {
    Enumerate,
    Green,
    Schutz,
    TestElements,
    Bicharacter,
    Radical,
    CharacterTable,
    Cartan,
}

impl Stage {
    pub const ALL: [Stage; 8] = [
        Stage::Enumerate,
        Stage::Green,
        Stage::Schutz,
        Stage::TestElements,
        Stage::Bicharacter,
        Stage::Radical,
        Stage::CharacterTable,
        Stage::Cartan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Stage::Enumerate => "enumerate",
            Stage::Green => "green",
            Stage::Schutz => "schutz",
            Stage::TestElements => "c_m",
            Stage::Bicharacter => "bichar",
            Stage::Radical => "radical",
            Stage::CharacterTable => "chartable",
            Stage::Cartan => "cartan",
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An error together with the stage that raised it.
#[derive(Debug, thiserror::Error)]
#[error("stage {stage}: {source}")]
pub struct StageError {
    pub stage: Stage,
    #[source]
    pub source: Error,
}

/// Runs stages, reporting each one's wall time to an observer.
pub struct Runner<F: FnMut(Stage, Duration)> {
    observer: F,
}

impl Runner<fn(Stage, Duration)> {
    pub fn silent() -> Self {
        Runner { observer: |_, _| {} }
    }
}

impl<F: FnMut(Stage, Duration)> Runner<F> {
    pub fn new(observer: F) -> Self {
        Runner { observer }
    }

    pub fn stage<T>(&mut self, stage: Stage, f: impl FnOnce() -> Result<T, Error>) -> Result<T, StageError> {
        let start = Instant::now();
        let out = f().map_err(|source| StageError { stage, source })?;
        (self.observer)(stage, start.elapsed());
        Ok(out)
    }
}

/// Monoid, Green structure, Schützenberger groups and test elements.
#[derive(Debug, Clone)]
pub struct Structure {
    pub table: MonoidTable,
    pub green: GreenStructure,
    pub schutz: SchutzData,
    pub c_m: TestElements,
}

impl Structure {
    pub fn compute<F: FnMut(Stage, Duration)>(generators: &[Transformation], runner: &mut Runner<F>) -> Result<Structure, StageError> {
        let table = runner.stage(Stage::Enumerate, || MonoidTable::enumerate(generators))?;
        let green = runner.stage(Stage::Green, || Ok(GreenStructure::compute(&table)))?;
        let schutz = runner.stage(Stage::Schutz, || SchutzData::compute(&table, &green))?;
        let c_m = runner.stage(Stage::TestElements, || {
            let classes = CharacterClasses::compute(&table, &green, &schutz);
            Ok(compute_c_m(&table, &schutz, &classes))
        })?;
        Ok(Structure { table, green, schutz, c_m })
    }

    pub fn bicharacter<F: FnMut(Stage, Duration)>(&self, runner: &mut Runner<F>) -> Result<BicharacterMatrix, StageError> {
        runner.stage(Stage::Bicharacter, || {
            let counter = FixedPointCounter::new(&self.table, &self.green, &self.schutz);
            Ok(bicharacter_matrix(&counter, &self.c_m))
        })
    }

    /// Radical of the L-class of each chosen idempotent, indexed by J-class.
    pub fn radicals<F: FnMut(Stage, Duration)>(&self, runner: &mut Runner<F>) -> Result<Vec<Option<RadicalBasis>>, StageError> {
        runner.stage(Stage::Radical, || {
            let idempotents: Vec<Option<usize>> = self
                .schutz
                .regular
                .iter()
                .map(|d| d.as_ref().map(|d| d.idempotent))
                .collect();
            Ok(radicals_of_idempotents(&self.table, &self.green, &idempotents))
        })
    }

    pub fn character_table<F: FnMut(Stage, Duration)>(
        &self,
        radicals: &[Option<RadicalBasis>],
        runner: &mut Runner<F>,
    ) -> Result<MonoidCharTable, StageError> {
        runner.stage(Stage::CharacterTable, || {
            character_table(&self.table, &self.green, &self.schutz, &self.c_m, radicals)
        })
    }
}

/// Everything down to the Cartan matrix.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub structure: Structure,
    pub bicharacter: BicharacterMatrix,
    pub characters: MonoidCharTable,
    pub dimensions: Vec<u64>,
    pub cartan: CartanMatrix,
}

impl Analysis {
    pub fn run<F: FnMut(Stage, Duration)>(generators: &[Transformation], runner: &mut Runner<F>) -> Result<Analysis, StageError> {
        let structure = Structure::compute(generators, runner)?;
        let bicharacter = structure.bicharacter(runner)?;
        let radicals = structure.radicals(runner)?;
        let characters = structure.character_table(&radicals, runner)?;
        let (dimensions, cartan) = runner.stage(Stage::Cartan, || {
            Ok((simple_dimensions(&characters)?, cartan_matrix(&characters, &bicharacter)?))
        })?;
        Ok(Analysis {
            structure,
            bicharacter,
            characters,
            dimensions,
            cartan,
        })
    }

    pub fn of(generators: &[Transformation]) -> Result<Analysis, StageError> {
        Analysis::run(generators, &mut Runner::silent())
    }
}
