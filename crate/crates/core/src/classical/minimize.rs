use std::collections::{HashMap, VecDeque};

use super::Dfa;

impl Dfa {
    /// Minimal equivalent DFA.
    ///
    /// Unreachable states are dropped, then states are merged by Moore
    /// partition refinement. States of the result appear in breadth-first
    /// order from the initial state, and each keeps the name of the first
    /// member of its class in that order.
    pub fn minimize(&self) -> Dfa {
        let reachable = self.reachable_states();
        let k = self.alphabet().len();

        // Block id per original state; unreachable states stay unassigned.
        let mut block = vec![usize::MAX; self.num_states()];
        for &s in &reachable {
            block[s] = usize::from(self.is_accepting(s));
        }
        let mut count = reachable
            .iter()
            .map(|&s| block[s])
            .collect::<std::collections::HashSet<_>>()
            .len();
        loop {
            let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
            let mut refined = vec![usize::MAX; self.num_states()];
            for &s in &reachable {
                let mut signature = Vec::with_capacity(k + 1);
                signature.push(block[s]);
                signature.extend((0..k).map(|a| block[self.next(s, a)]));
                let next_id = ids.len();
                refined[s] = *ids.entry(signature).or_insert(next_id);
            }
            let refined_count = ids.len();
            block = refined;
            if refined_count == count {
                break;
            }
            count = refined_count;
        }

        // Renumber blocks breadth-first from the initial block.
        let mut representative: HashMap<usize, usize> = HashMap::new();
        for &s in &reachable {
            representative.entry(block[s]).or_insert(s);
        }
        let mut order: Vec<usize> = Vec::with_capacity(count);
        let mut new_index: HashMap<usize, usize> = HashMap::new();
        let mut queue = VecDeque::new();
        let start = block[self.initial()];
        new_index.insert(start, 0);
        order.push(start);
        queue.push_back(start);
        while let Some(b) = queue.pop_front() {
            let s = representative[&b];
            for a in 0..k {
                let t = block[self.next(s, a)];
                if let std::collections::hash_map::Entry::Vacant(e) = new_index.entry(t) {
                    e.insert(order.len());
                    order.push(t);
                    queue.push_back(t);
                }
            }
        }

        let states = order
            .iter()
            .map(|b| self.state_name(representative[b]).to_string())
            .collect();
        let delta = order
            .iter()
            .map(|b| {
                let s = representative[b];
                (0..k).map(|a| new_index[&block[self.next(s, a)]]).collect()
            })
            .collect();
        let accepting = order
            .iter()
            .map(|b| self.is_accepting(representative[b]))
            .collect();
        Dfa::new(states, self.alphabet().clone(), 0, delta, accepting)
            .expect("minimized automaton is well formed")
    }
}
