//! Suggests words a brand could link to in order to raise its connectivity.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::cooc::CoocNetwork;
use crate::metrics::betweenness_all;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TargetWord {
    pub word: String,
    /// Brand connectivity before and after adding the link.
    pub before: f64,
    pub after: f64,
}

impl TargetWord {
    pub fn gain(&self) -> f64 {
        self.after - self.before
    }
}

/// Greedy selection of up to `budget` new brand links.
///
/// Candidates are the `pool` most frequent words that are not the brand, not
/// already linked to it and not in `forbidden`. Each round adds the trial link
/// (weighted at the median edge weight) that most increases the brand's
/// betweenness; ties go to the lexically smallest word. Adding a link to the
/// brand never lowers its betweenness, so `after` is non-decreasing.
pub fn target_words(
    net: &CoocNetwork,
    brand: &str,
    budget: usize,
    forbidden: &HashSet<&str>,
    pool: usize,
) -> Vec<TargetWord> {
    let Some(b) = net.index_of(brand) else {
        return Vec::new();
    };
    let trial = net.median_edge_weight().unwrap_or(1.0);

    let mut ranked: Vec<usize> = (0..net.node_count())
        .filter(|&i| i != b && !forbidden.contains(net.label(i)) && net.weight(b, i) == 0.0)
        .collect();
    ranked.sort_by(|&x, &y| net.freq(y).total_cmp(&net.freq(x)).then_with(|| net.label(x).cmp(net.label(y))));
    ranked.truncate(pool);
    ranked.sort_by(|&x, &y| net.label(x).cmp(net.label(y)));

    let mut current = net.clone();
    let mut chosen = Vec::new();
    let mut score = betweenness_all(&current)[b];
    while chosen.len() < budget && !ranked.is_empty() {
        let trials: Vec<f64> = ranked
            .par_iter()
            .map(|&c| betweenness_all(&current.with_edge(b, c, trial))[b])
            .collect();
        let mut best = 0;
        let mut best_score = trials[0];
        for (k, &s) in trials.iter().enumerate().skip(1) {
            if s > best_score + 1e-12 {
                best = k;
                best_score = s;
            }
        }
        let c = ranked.remove(best);
        current = current.with_edge(b, c, trial);
        chosen.push(TargetWord {
            word: net.label(c).to_string(),
            before: score,
            after: best_score,
        });
        score = best_score;
    }
    chosen
}

#[cfg(test)]
mod tests {
    use super::*;

    fn none() -> HashSet<&'static str> {
        HashSet::new()
    }

    #[test]
    fn bridging_two_components_wins() {
        // brand–a–b and a separate c–d–e path; any link into c, d or e makes
        // brand a bridge for the same 6 pairs, so the lexical tie-break decides
        let net = CoocNetwork::from_parts(
            &[("brand", 1.0), ("a", 1.0), ("b", 1.0), ("c", 1.0), ("d", 1.0), ("e", 1.0)],
            &[("brand", "a", 1.0), ("a", "b", 1.0), ("c", "d", 1.0), ("d", "e", 1.0)],
        );
        let picks = target_words(&net, "brand", 1, &none(), 30);
        assert_eq!(picks.len(), 1);
        assert_eq!(picks[0].word, "c");
        assert_eq!(picks[0].before, 0.0);
        // 6 of the C(5,2) = 10 pairs among the other nodes
        assert!((picks[0].after - 0.6).abs() < 1e-12);
    }

    #[test]
    fn respects_forbidden_and_existing_links() {
        let net = CoocNetwork::from_parts(
            &[("brand", 1.0), ("a", 1.0), ("b", 1.0), ("c", 1.0), ("d", 1.0), ("e", 1.0)],
            &[("brand", "a", 1.0), ("a", "b", 1.0), ("c", "d", 1.0), ("d", "e", 1.0)],
        );
        let forbidden: HashSet<&str> = ["d"].into_iter().collect();
        let picks = target_words(&net, "brand", 3, &forbidden, 30);
        assert!(picks.iter().all(|p| p.word != "d" && p.word != "a"));
        for pair in picks.windows(2) {
            assert_eq!(pair[0].after, pair[1].before);
        }
    }

    #[test]
    fn single_candidate_is_taken_without_gain() {
        // closing the triangle gives brand no brokerage
        let net = CoocNetwork::from_parts(&[("brand", 1.0), ("a", 1.0), ("b", 1.0)], &[("brand", "a", 1.0), ("a", "b", 1.0)]);
        let picks = target_words(&net, "brand", 2, &none(), 30);
        assert_eq!(picks.len(), 1);
        assert_eq!(picks[0].word, "b");
        assert_eq!(picks[0].gain(), 0.0);
    }

    #[test]
    fn absent_brand_or_zero_budget() {
        let net = CoocNetwork::from_parts(&[("a", 1.0), ("b", 1.0)], &[("a", "b", 1.0)]);
        assert!(target_words(&net, "zzz", 3, &none(), 30).is_empty());
        assert!(target_words(&net, "a", 0, &none(), 30).is_empty());
        // nothing left to link to
        assert!(target_words(&net, "a", 3, &none(), 30).is_empty());
    }
}
