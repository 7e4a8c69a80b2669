//! Size and shape statistics of an index.

use std::fmt;

use crate::heap::BuildStats;
use crate::index::Index;

#[derive(Clone, Debug, PartialEq)]
pub struct Stats {
    /// Input-trie nodes.
    pub n: usize,
    /// pCST nodes, which is also the heap size.
    pub n_p: usize,
    /// `n_p / n`.
    pub ratio: f64,
    pub heap_height: usize,
    pub mean_depth: f64,
    pub links: usize,
    pub sigma: usize,
    pub pi: usize,
    pub build: Option<BuildStats>,
}

impl Stats {
    pub fn of(index: &Index, build: Option<BuildStats>) -> Stats {
        let heap = index.heap();
        let n = index.trie().len();
        let n_p = index.pcst().len();
        let depths: Vec<usize> = heap.ids().map(|v| heap.depth(v)).collect();
        Stats {
            n,
            n_p,
            ratio: n_p as f64 / n as f64,
            heap_height: depths.iter().copied().max().unwrap_or(0),
            mean_depth: depths.iter().sum::<usize>() as f64 / heap.len() as f64,
            links: heap.ids().map(|v| heap.get(v).links().len()).sum(),
            sigma: index.alphabet().sigma_len(),
            pi: index.alphabet().pi_len(),
            build,
        }
    }
}

impl fmt::Display for Stats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "N={} N_p={} ratio={:.3} height={} mean_depth={:.3} rsl={} sigma={} pi={}",
            self.n, self.n_p, self.ratio, self.heap_height, self.mean_depth, self.links, self.sigma, self.pi
        )?;
        if let Some(b) = &self.build {
            write!(
                f,
                " climb_steps={} corner_cases={} completed_links={} descents={} descent_steps={} mrp_climb_steps={} mrp_descent_steps={}",
                b.climb_steps,
                b.corner_cases,
                b.completed_links,
                b.descents,
                b.descent_steps,
                b.mrp_climb_steps,
                b.mrp_descent_steps
            )?;
        }
        Ok(())
    }
}
