use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

/// Shortest word (lexicographically least among the shortest) leading from
/// `start` to a node satisfying `is_target`, as symbol indices.
///
/// With `nonempty` set the empty word is excluded even when `start` is itself
/// a target, so `is_target = |n| n == start` finds the shortest nonempty cycle.
pub(crate) fn shortest_word<N, S, T>(
    start: N,
    successor: S,
    symbols: usize,
    is_target: T,
    nonempty: bool,
) -> Option<Vec<usize>>
where
    N: Copy + Eq + Hash,
    S: Fn(N, usize) -> N,
    T: Fn(N) -> bool,
{
    if !nonempty && is_target(start) {
        return Some(Vec::new());
    }
    // Breadth-first with symbols in ascending order: the first discovery of a
    // node is along its length-lexicographically least word.
    let mut parent: HashMap<N, (N, usize)> = HashMap::new();
    let mut queue = VecDeque::from([start]);
    let mut found = None;
    'search: while let Some(node) = queue.pop_front() {
        for a in 0..symbols {
            let next = successor(node, a);
            if (next == start && !nonempty) || parent.contains_key(&next) {
                continue;
            }
            parent.insert(next, (node, a));
            if is_target(next) {
                found = Some(next);
                break 'search;
            }
            queue.push_back(next);
        }
    }
    let mut node = found?;
    let mut word = Vec::new();
    loop {
        let (prev, a) = parent[&node];
        word.push(a);
        if prev == start {
            break;
        }
        node = prev;
    }
    word.reverse();
    Some(word)
}
