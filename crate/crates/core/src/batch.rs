//! Running many independent judgements on one model.
//!
//! With the `parallel` feature the jobs are spread over the rayon pool;
//! otherwise they run one after another. Results come back in job order
//! either way.

use crate::checker::{check_ctl, check_ltl, CheckError, Verdict};
use crate::criteria::{BlockSet, CompletenessCriterion};
use crate::logic::{CtlFormula, LtlFormula};
use crate::lts::Ltsc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formula {
    Ltl(LtlFormula),
    Ctl(CtlFormula),
}

#[derive(Clone, Debug)]
pub struct Job {
    pub formula: Formula,
    pub cc: CompletenessCriterion,
    pub block: BlockSet,
}

impl Job {
    pub fn run(&self, ltsc: &Ltsc) -> Result<Verdict, CheckError> {
        match &self.formula {
            Formula::Ltl(f) => check_ltl(ltsc, f, &self.cc, &self.block),
            Formula::Ctl(f) => check_ctl(ltsc, f, &self.cc, &self.block),
        }
    }
}

/// Runs every job, in parallel when the `parallel` feature is on.
pub fn run_batch(ltsc: &Ltsc, jobs: &[Job]) -> Vec<Result<Verdict, CheckError>> {
    #[cfg(feature = "parallel")]
    {
        run_parallel(ltsc, jobs)
    }
    #[cfg(not(feature = "parallel"))]
    {
        run_sequential(ltsc, jobs)
    }
}

pub fn run_sequential(ltsc: &Ltsc, jobs: &[Job]) -> Vec<Result<Verdict, CheckError>> {
    jobs.iter().map(|j| j.run(ltsc)).collect()
}

#[cfg(feature = "parallel")]
pub fn run_parallel(ltsc: &Ltsc, jobs: &[Job]) -> Vec<Result<Verdict, CheckError>> {
    use rayon::prelude::*;
    jobs.par_iter().map(|j| j.run(ltsc)).collect()
}
