//! A small CNF SAT solver: DPLL with two watched literals and chronological
//! backtracking. Sized for the oracle's grid encodings (thousands of
//! variables), not for industrial workloads.

/// Positive literal `v+1` / negative literal `-(v+1)` for variable index `v`.
pub type Lit = i32;

#[derive(Default)]
pub struct CnfBuilder {
    num_vars: usize,
    clauses: Vec<Vec<Lit>>,
    trivially_unsat: bool,
}

impl CnfBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn fresh(&mut self) -> Lit {
        self.num_vars += 1;
        self.num_vars as Lit
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn add_clause(&mut self, mut lits: Vec<Lit>) {
        lits.sort_unstable();
        lits.dedup();
        // drop tautologies
        if lits.windows(2).any(|w| w[0] == -w[1]) {
            return;
        }
        if lits.is_empty() {
            self.trivially_unsat = true;
            return;
        }
        self.clauses.push(lits);
    }

    /// `target <-> AND(lits)`
    pub fn define_and(&mut self, lits: &[Lit]) -> Lit {
        match lits {
            [] => self.constant_true(),
            [single] => *single,
            _ => {
                let t = self.fresh();
                for &l in lits {
                    self.add_clause(vec![-t, l]);
                }
                let mut long: Vec<Lit> = lits.iter().map(|l| -l).collect();
                long.push(t);
                self.add_clause(long);
                t
            }
        }
    }

    /// `target <-> OR(lits)`
    pub fn define_or(&mut self, lits: &[Lit]) -> Lit {
        match lits {
            [] => -self.constant_true(),
            [single] => *single,
            _ => {
                let t = self.fresh();
                for &l in lits {
                    self.add_clause(vec![t, -l]);
                }
                let mut long: Vec<Lit> = lits.to_vec();
                long.push(-t);
                self.add_clause(long);
                t
            }
        }
    }

    fn constant_true(&mut self) -> Lit {
        // variable 1 is reserved as the true constant on first use
        if self.num_vars == 0 {
            let t = self.fresh();
            self.add_clause(vec![t]);
            t
        } else {
            1
        }
    }

    /// Reserves variable 1 as the constant-true literal. Call before any
    /// other variable is created.
    pub fn init_constants(&mut self) -> Lit {
        assert_eq!(self.num_vars, 0);
        self.constant_true()
    }

    pub fn solve(&self) -> Option<Vec<bool>> {
        if self.trivially_unsat {
            return None;
        }
        Solver::new(self.num_vars, &self.clauses).run()
    }
}

struct Solver<'a> {
    clauses: Vec<Vec<Lit>>,
    assign: Vec<i8>,
    trail: Vec<(Lit, bool)>,
    watches: Vec<Vec<u32>>,
    prop_head: usize,
    _marker: std::marker::PhantomData<&'a ()>,
}

fn lit_index(l: Lit) -> usize {
    let v = (l.unsigned_abs() as usize) - 1;
    (v << 1) | usize::from(l < 0)
}

impl<'a> Solver<'a> {
    fn new(num_vars: usize, clauses: &'a [Vec<Lit>]) -> Self {
        Solver {
            clauses: clauses.to_vec(),
            assign: vec![0; num_vars],
            trail: Vec::new(),
            watches: vec![Vec::new(); num_vars * 2],
            prop_head: 0,
            _marker: std::marker::PhantomData,
        }
    }

    fn value(&self, l: Lit) -> i8 {
        let v = (l.unsigned_abs() as usize) - 1;
        let a = self.assign[v];
        if l > 0 {
            a
        } else {
            -a
        }
    }

    fn enqueue(&mut self, l: Lit, decision: bool) -> bool {
        match self.value(l) {
            1 => true,
            -1 => false,
            _ => {
                let v = (l.unsigned_abs() as usize) - 1;
                self.assign[v] = if l > 0 { 1 } else { -1 };
                self.trail.push((l, decision));
                true
            }
        }
    }

    fn propagate(&mut self) -> bool {
        while self.prop_head < self.trail.len() {
            let l = self.trail[self.prop_head].0;
            self.prop_head += 1;
            let falsified = -l;
            let widx = lit_index(falsified);
            let mut i = 0;
            'clauses: while i < self.watches[widx].len() {
                let ci = self.watches[widx][i] as usize;
                // normalize: watched literal at position 1
                if self.clauses[ci][0] == falsified {
                    self.clauses[ci].swap(0, 1);
                }
                if self.value(self.clauses[ci][0]) == 1 {
                    i += 1;
                    continue;
                }
                for k in 2..self.clauses[ci].len() {
                    if self.value(self.clauses[ci][k]) != -1 {
                        self.clauses[ci].swap(1, k);
                        let moved = self.clauses[ci][1];
                        self.watches[lit_index(moved)].push(ci as u32);
                        self.watches[widx].swap_remove(i);
                        continue 'clauses;
                    }
                }
                // unit or conflict on clauses[ci][0]
                let first = self.clauses[ci][0];
                if self.value(first) == -1 {
                    return false;
                }
                if !self.enqueue(first, false) {
                    return false;
                }
                i += 1;
            }
        }
        true
    }

    fn backtrack(&mut self) -> bool {
        while let Some((l, decision)) = self.trail.pop() {
            let v = (l.unsigned_abs() as usize) - 1;
            self.assign[v] = 0;
            if decision {
                self.prop_head = self.trail.len();
                // flip as a forced assignment
                let ok = self.enqueue(-l, false);
                debug_assert!(ok);
                return true;
            }
        }
        false
    }

    fn run(mut self) -> Option<Vec<bool>> {
        // watch setup; unit clauses enqueue directly
        for ci in 0..self.clauses.len() {
            match self.clauses[ci].len() {
                0 => return None,
                1 => {
                    let l = self.clauses[ci][0];
                    if !self.enqueue(l, false) {
                        return None;
                    }
                }
                _ => {
                    let (a, b) = (self.clauses[ci][0], self.clauses[ci][1]);
                    self.watches[lit_index(a)].push(ci as u32);
                    self.watches[lit_index(b)].push(ci as u32);
                }
            }
        }
        loop {
            if self.propagate() {
                match (0..self.assign.len()).find(|v| self.assign[*v] == 0) {
                    None => {
                        return Some(self.assign.iter().map(|a| *a == 1).collect());
                    }
                    Some(v) => {
                        let ok = self.enqueue(-((v + 1) as Lit), true);
                        debug_assert!(ok);
                    }
                }
            } else if !self.backtrack() {
                return None;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solve(clauses: &[&[Lit]], num_vars: usize) -> Option<Vec<bool>> {
        let mut b = CnfBuilder::new();
        for _ in 0..num_vars {
            b.fresh();
        }
        for c in clauses {
            b.add_clause(c.to_vec());
        }
        b.solve()
    }

    #[test]
    fn trivial_sat_and_unsat() {
        assert!(solve(&[&[1, 2], &[-1, 2], &[1, -2]], 2).is_some());
        assert!(solve(&[&[1], &[-1]], 1).is_none());
        assert!(solve(&[&[1, 2], &[-1, 2], &[1, -2], &[-1, -2]], 2).is_none());
    }

    #[test]
    fn model_satisfies_all_clauses() {
        // pigeonhole-ish satisfiable instance
        let clauses: Vec<Vec<Lit>> = vec![
            vec![1, 2, 3],
            vec![-1, -2],
            vec![-1, -3],
            vec![-2, -3],
            vec![2, 4],
            vec![-4, 5],
        ];
        let refs: Vec<&[Lit]> = clauses.iter().map(|c| c.as_slice()).collect();
        let model = solve(&refs, 5).expect("satisfiable");
        for c in &clauses {
            assert!(c.iter().any(|&l| {
                let v = (l.unsigned_abs() as usize) - 1;
                (l > 0) == model[v]
            }));
        }
    }

    #[test]
    fn unsat_pigeonhole_three_in_two() {
        // 3 pigeons, 2 holes
        let mut clauses: Vec<Vec<Lit>> = Vec::new();
        let var = |p: usize, h: usize| (p * 2 + h + 1) as Lit;
        for p in 0..3 {
            clauses.push(vec![var(p, 0), var(p, 1)]);
        }
        for h in 0..2 {
            for p1 in 0..3 {
                for p2 in (p1 + 1)..3 {
                    clauses.push(vec![-var(p1, h), -var(p2, h)]);
                }
            }
        }
        let refs: Vec<&[Lit]> = clauses.iter().map(|c| c.as_slice()).collect();
        assert!(solve(&refs, 6).is_none());
    }

    #[test]
    fn definitional_gates() {
        let mut b = CnfBuilder::new();
        let t = b.init_constants();
        let x = b.fresh();
        let y = b.fresh();
        let and = b.define_and(&[x, y, t]);
        let or = b.define_or(&[x, -y]);
        b.add_clause(vec![and]);
        b.add_clause(vec![or]);
        let m = b.solve().unwrap();
        let val = |l: Lit| {
            let v = (l.unsigned_abs() as usize) - 1;
            (l > 0) == m[v]
        };
        assert!(val(x) && val(y) && val(and) && val(or) && val(t));
    }
}
