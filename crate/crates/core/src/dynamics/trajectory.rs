use std::io::{self, Write};

use crate::csvfmt;
use crate::error::{domain, Result};
use crate::states::DensityMatrix;

/// States on an increasing time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<DensityMatrix>,
}

impl Trajectory {
    pub fn new(times: Vec<f64>, states: Vec<DensityMatrix>) -> Result<Self> {
        if times.len() != states.len() {
            return Err(domain(format!(
                "{} times but {} states",
                times.len(),
                states.len()
            )));
        }
        if times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(domain("trajectory times must be strictly increasing"));
        }
        Ok(Self { times, states })
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &DensityMatrix)> {
        self.times.iter().copied().zip(self.states.iter())
    }

    pub fn csv_header() -> String {
        let mut cols = vec!["t".to_string()];
        for i in 1..=4 {
            for j in 1..=4 {
                cols.push(format!("re_{i}{j}"));
                cols.push(format!("im_{i}{j}"));
            }
        }
        cols.push("trace".into());
        cols.push("min_eigenvalue".into());
        csvfmt::row(cols)
    }

    /// Header plus one row per time point.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "{}", Self::csv_header())?;
        for (t, s) in self.iter() {
            let mut vals = Vec::with_capacity(35);
            vals.push(t);
            for i in 0..4 {
                for j in 0..4 {
                    let z = s.get(i, j);
                    vals.push(z.re);
                    vals.push(z.im);
                }
            }
            vals.push(s.trace());
            vals.push(s.min_eigenvalue());
            writeln!(w, "{}", csvfmt::num_row(&vals))?;
        }
        Ok(())
    }
}
