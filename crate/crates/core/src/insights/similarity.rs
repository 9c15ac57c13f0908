use std::collections::{BTreeSet, HashSet};

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use super::AssociationProfile;

/// Pairwise cosine similarity of association vectors.
///
/// The vector space is the union of associated words with every brand id
/// removed, so brands are not similar merely through each other. A zero
/// vector has similarity 0 with other brands; the diagonal is always 1.
pub fn brand_similarity(profiles: &[AssociationProfile]) -> Vec<Vec<f64>> {
    let brand_ids: HashSet<&str> = profiles.iter().map(|p| p.brand.as_str()).collect();
    let vocab: BTreeSet<&str> = profiles
        .iter()
        .flat_map(|p| p.associations.keys().map(String::as_str))
        .filter(|w| !brand_ids.contains(w))
        .collect();
    let vectors: Vec<Vec<f64>> = profiles
        .iter()
        .map(|p| {
            vocab
                .iter()
                .map(|w| p.associations.get(*w).copied().unwrap_or(0.0))
                .collect()
        })
        .collect();
    let n = profiles.len();
    let mut sim = vec![vec![0.0; n]; n];
    for i in 0..n {
        sim[i][i] = 1.0;
        for j in i + 1..n {
            let s = cosine(&vectors[i], &vectors[j]);
            sim[i][j] = s;
            sim[j][i] = s;
        }
    }
    sim
}

pub fn cosine(a: &[f64], b: &[f64]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    if na == 0.0 || nb == 0.0 {
        0.0
    } else {
        (dot / (na * nb)).clamp(-1.0, 1.0)
    }
}

/// Brand coordinates on the similarity map.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Embedding2D {
    pub brands: Vec<String>,
    pub coords: Vec<[f64; 2]>,
}

impl Embedding2D {
    pub fn from_similarity(brands: &[String], similarity: &[Vec<f64>]) -> Self {
        Embedding2D {
            brands: brands.to_vec(),
            coords: mds_embed(similarity),
        }
    }
}

/// Classical (Torgerson) MDS of `1 - similarity` into two dimensions.
///
/// Axes with a non-positive eigenvalue collapse to 0. Each axis is flipped so
/// that its first clearly nonzero coordinate is positive.
pub fn mds_embed(similarity: &[Vec<f64>]) -> Vec<[f64; 2]> {
    let n = similarity.len();
    if n == 0 {
        return Vec::new();
    }
    let sq = DMatrix::from_fn(n, n, |i, j| {
        let d = if i == j { 0.0 } else { 1.0 - similarity[i][j] };
        d * d
    });
    let centering = DMatrix::identity(n, n) - DMatrix::from_element(n, n, 1.0 / n as f64);
    let mut gram = &centering * sq * &centering * -0.5;
    // symmetrize away rounding noise before the eigensolver
    gram = (&gram + gram.transpose()) * 0.5;

    let eig = SymmetricEigen::new(gram);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let scale = eig.eigenvalues.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let tol = 1e-12 * scale.max(1.0);

    let mut coords = vec![[0.0; 2]; n];
    for (axis, &k) in order.iter().take(2).enumerate() {
        let lambda = eig.eigenvalues[k];
        if lambda <= tol {
            continue;
        }
        let root = lambda.sqrt();
        let column = eig.eigenvectors.column(k);
        let flip = column
            .iter()
            .find(|v| v.abs() > 1e-9)
            .map_or(1.0, |v| v.signum());
        for i in 0..n {
            coords[i][axis] = flip * column[i] * root;
        }
    }
    coords
}
