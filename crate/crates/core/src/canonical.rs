//! Block canonical matrix and canonical bases of a subspace pair, the
//! dual permutation to the pair (sigma, pi*), and synthesis of a pair
//! from prescribed principal values.

use crate::eigen::sym_eigen;
use crate::error::{Error, Result};
use crate::matrix::{dot, gram, multiply_transposed, Matrix};
use crate::ortho::complete_against;
use crate::principal::{cluster_values, snap_unit_interval};
use crate::subspace::{check_ambient, Subspace};
use crate::tol::{Tolerances, FORM_ENTRY_TOL};

/// Size and value ledger of the block canonical matrix.
///
/// Stores the interior cosines `c_i` (strictly inside (0,1), descending)
/// with multiplicities, plus the multiplicities `r0` of value 1 and
/// `r_last` of value 0. Requires `p <= q` and `p + q <= n`; pairs
/// violating the latter are dualized before a spec is built.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalSpec {
    n: usize,
    p: usize,
    q: usize,
    r0: usize,
    cosines: Vec<f64>,
    multiplicities: Vec<usize>,
    r_last: usize,
}

impl CanonicalSpec {
    pub fn new(
        n: usize,
        p: usize,
        q: usize,
        r0: usize,
        cosines: Vec<f64>,
        multiplicities: Vec<usize>,
        r_last: usize,
    ) -> Result<Self> {
        let fail = |detail: String| Err(Error::InvalidCanonicalSpec { detail });
        if p == 0 || !(p <= q && q <= n) {
            return fail(format!("need 1 <= p <= q <= n, got n={n}, p={p}, q={q}"));
        }
        if p + q > n {
            return fail(format!(
                "block layout needs p + q <= n, got p+q={} > n={n}; dualize first",
                p + q
            ));
        }
        if cosines.len() != multiplicities.len() {
            return fail(format!(
                "{} interior values but {} multiplicities",
                cosines.len(),
                multiplicities.len()
            ));
        }
        for w in cosines.windows(2) {
            if w[0] <= w[1] {
                return fail(format!(
                    "interior cosines must be strictly descending, got {} then {}",
                    w[0], w[1]
                ));
            }
        }
        for &c in &cosines {
            if !(c > 0.0 && c < 1.0) {
                return fail(format!("interior cosine {c} outside (0,1)"));
            }
        }
        if multiplicities.contains(&0) {
            return fail("zero multiplicity in the ledger".into());
        }
        let sum: usize = r0 + multiplicities.iter().sum::<usize>() + r_last;
        if sum != p {
            return fail(format!("multiplicities sum to {sum}, expected p={p}"));
        }
        Ok(CanonicalSpec {
            n,
            p,
            q,
            r0,
            cosines,
            multiplicities,
            r_last,
        })
    }

    /// Clusters p squared principal values and splits them into the
    /// ledger (value 1, interior, value 0).
    pub fn from_squared_values(
        n: usize,
        p: usize,
        q: usize,
        squared: &[f64],
        cluster_tol: f64,
    ) -> Result<Self> {
        if squared.len() != p {
            return Err(Error::InvalidCanonicalSpec {
                detail: format!("expected {p} squared values, got {}", squared.len()),
            });
        }
        for &v in squared {
            if !(0.0..=1.0).contains(&v) || !v.is_finite() {
                return Err(Error::InvalidPrincipalValue { value: v });
            }
        }
        let mut sorted = squared.to_vec();
        sorted.sort_by(|a, b| b.total_cmp(a));
        snap_unit_interval(&mut sorted, cluster_tol);
        let (values, mults) = cluster_values(&sorted, cluster_tol);
        let (r0, interior, r_last) = split_ledger(&values, &mults);
        let cosines = interior.iter().map(|(v, _)| v.sqrt()).collect();
        let interior_mults = interior.iter().map(|(_, m)| *m).collect();
        CanonicalSpec::new(n, p, q, r0, cosines, interior_mults, r_last)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// Multiplicity of the principal value 1.
    pub fn r0(&self) -> usize {
        self.r0
    }

    /// Multiplicity of the principal value 0.
    pub fn r_last(&self) -> usize {
        self.r_last
    }

    pub fn cosines(&self) -> &[f64] {
        &self.cosines
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    /// Number of distinct interior values.
    pub fn interior_count(&self) -> usize {
        self.cosines.len()
    }

    /// Multiplicity of value 1 on the complement side: `r0 + n - p - q`.
    pub fn r0_prime(&self) -> usize {
        self.r0 + self.n - self.p - self.q
    }

    /// Coupling weights `d_i = sqrt(1 - c_i^2)`.
    pub fn d_values(&self) -> Vec<f64> {
        self.cosines.iter().map(|c| (1.0 - c * c).sqrt()).collect()
    }

    /// Row/column block sizes of the canonical matrix, in print order:
    /// `r0, r_1, .., r_s, r_last, q-p, r_last, r_s, .., r_1, r0'`.
    pub fn block_sizes(&self) -> Vec<usize> {
        let s = self.interior_count();
        let mut sizes = Vec::with_capacity(2 * s + 5);
        sizes.push(self.r0);
        sizes.extend(&self.multiplicities);
        sizes.push(self.r_last);
        sizes.push(self.q - self.p);
        sizes.push(self.r_last);
        sizes.extend(self.multiplicities.iter().rev());
        sizes.push(self.r0_prime());
        sizes
    }

    /// Squared principal values expanded with multiplicity, descending.
    pub fn squared_values(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.p);
        out.extend(std::iter::repeat_n(1.0, self.r0));
        for (c, m) in self.cosines.iter().zip(&self.multiplicities) {
            out.extend(std::iter::repeat_n(c * c, *m));
        }
        out.extend(std::iter::repeat_n(0.0, self.r_last));
        out
    }
}

fn split_ledger(values: &[f64], mults: &[usize]) -> (usize, Vec<(f64, usize)>, usize) {
    let mut r0 = 0;
    let mut r_last = 0;
    let mut interior = Vec::new();
    for (&v, &m) in values.iter().zip(mults) {
        if v == 1.0 {
            r0 = m;
        } else if v == 0.0 {
            r_last = m;
        } else {
            interior.push((v, m));
        }
    }
    (r0, interior, r_last)
}

/// Assembles the block canonical matrix for a spec: leading identity of
/// order `r0`, interior couplings `c_i I` with `d_i I'` above and
/// `-d_i I'` below the anti-diagonal, the central `I'`/`I`/`I'` group of
/// orders `r_last`, `q-p`, `r_last`, and a trailing identity of order
/// `r0'`, where `I'` carries ones on the anti-diagonal.
pub fn build_canonical_matrix(spec: &CanonicalSpec) -> Matrix {
    let sizes = spec.block_sizes();
    let offsets = prefix_sums(&sizes);
    let n = spec.n();
    let s = spec.interior_count();
    let last = 2 * s + 4;
    let d = spec.d_values();
    let mut p = Matrix::zeros(n, n);

    place_identity(&mut p, offsets[0], offsets[0], sizes[0], 1.0);
    for i in 1..=s {
        let c = spec.cosines()[i - 1];
        let di = d[i - 1];
        let r = sizes[i];
        place_identity(&mut p, offsets[i], offsets[i], r, c);
        place_anti_identity(&mut p, offsets[i], offsets[last - i], r, di);
        place_anti_identity(&mut p, offsets[last - i], offsets[i], r, -di);
        place_identity(&mut p, offsets[last - i], offsets[last - i], r, c);
    }
    place_anti_identity(&mut p, offsets[s + 1], offsets[s + 3], sizes[s + 1], 1.0);
    place_identity(&mut p, offsets[s + 2], offsets[s + 2], sizes[s + 2], 1.0);
    place_anti_identity(&mut p, offsets[s + 3], offsets[s + 1], sizes[s + 3], 1.0);
    place_identity(&mut p, offsets[last], offsets[last], sizes[last], 1.0);
    p
}

fn prefix_sums(sizes: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(sizes.len());
    let mut acc = 0;
    for &s in sizes {
        out.push(acc);
        acc += s;
    }
    out
}

fn place_identity(m: &mut Matrix, row: usize, col: usize, size: usize, value: f64) {
    for k in 0..size {
        m.set(row + k, col + k, value);
    }
}

fn place_anti_identity(m: &mut Matrix, row: usize, col: usize, size: usize, value: f64) {
    for k in 0..size {
        m.set(row + k, col + size - 1 - k, value);
    }
}

/// Canonical data of a subspace pair: the ledger, the canonical matrix,
/// and the four ordered orthonormal bases realizing it.
///
/// `matrix_p` holds the inner products of the sigma frame (sigma rows,
/// then sigma* rows in opposite order) against the pi frame (pi rows,
/// then pi* rows in opposite order). `swapped` and `dualized` record the
/// normalization applied to the original inputs.
#[derive(Debug, Clone)]
pub struct CanonicalForm {
    pub spec: CanonicalSpec,
    pub matrix_p: Matrix,
    pub basis_sigma: Matrix,
    pub basis_sigma_star: Matrix,
    pub basis_pi: Matrix,
    pub basis_pi_star: Matrix,
    pub swapped: bool,
    pub dualized: bool,
}

impl CanonicalForm {
    /// Full orthonormal frame of E_n: sigma rows then sigma* rows reversed.
    pub fn frame(&self) -> Matrix {
        stack_reversed(&self.basis_sigma, &self.basis_sigma_star)
    }

    /// The frame indexing the columns of `matrix_p`: pi rows then pi*
    /// rows reversed.
    pub fn column_frame(&self) -> Matrix {
        stack_reversed(&self.basis_pi, &self.basis_pi_star)
    }
}

fn stack_reversed(first: &Matrix, second: &Matrix) -> Matrix {
    let mut rows = first.to_row_vecs();
    rows.extend(second.to_row_vecs().into_iter().rev());
    Matrix::from_rows(&rows).expect("frame rows are finite")
}

/// Canonical bases of a pair with default tolerances.
pub fn canonical_bases(s1: &Subspace, s2: &Subspace) -> Result<CanonicalForm> {
    canonical_bases_with(s1, s2, &Tolerances::default())
}

/// Builds the four canonical bases and the canonical matrix of a pair.
///
/// The pair is swapped so p <= q and replaced by its complements when
/// p + q > n; both normalizations are recorded on the returned form.
pub fn canonical_bases_with(
    s1: &Subspace,
    s2: &Subspace,
    tol: &Tolerances,
) -> Result<CanonicalForm> {
    check_ambient(s1, s2)?;
    let n = s1.ambient_dim();
    let (sa, sb, swapped) = crate::principal::ordered(s1, s2);
    if sa.dim() + sb.dim() <= n {
        let mut form = construct_form(sa, sb, tol)?;
        form.swapped = swapped;
        return Ok(form);
    }
    if sb.dim() == n {
        return Err(Error::ZeroComplement { ambient: n });
    }
    // the complements satisfy (n-q) + (n-p) < n and keep the same
    // interior values, so the layout is built for them instead
    let da = sb.orthogonal_complement()?;
    let db = sa.orthogonal_complement()?;
    let mut form = construct_form(&da, &db, tol)?;
    form.swapped = swapped;
    form.dualized = true;
    Ok(form)
}

struct ClusterRows {
    /// Squared value representative of the cluster.
    value: f64,
    a_rows: Vec<Vec<f64>>,
}

fn construct_form(sigma: &Subspace, pi: &Subspace, tol: &Tolerances) -> Result<CanonicalForm> {
    let n = sigma.ambient_dim();
    let p = sigma.dim();
    let q = pi.dim();

    let w = multiply_transposed(sigma.ortho_basis(), pi.ortho_basis())?;
    let f = gram(&w);
    let pair = sym_eigen(&f)?;
    let mut values = pair.eigenvalues.clone();
    snap_unit_interval(&mut values, tol.cluster);
    let (cluster_vals, cluster_mults) = cluster_values(&values, tol.cluster);

    let mut clusters = Vec::with_capacity(cluster_vals.len());
    let mut offset = 0;
    for (&value, &mult) in cluster_vals.iter().zip(&cluster_mults) {
        let mut a_rows = Vec::with_capacity(mult);
        for j in offset..offset + mult {
            let mut row = vec![0.0; n];
            for k in 0..p {
                let c = pair.eigenvectors.get(k, j);
                for (r, b) in row.iter_mut().zip(sigma.ortho_basis().row(k)) {
                    *r += c * b;
                }
            }
            a_rows.push(row);
        }
        clusters.push(ClusterRows { value, a_rows });
        offset += mult;
    }
    let (r0, interior, r_last) = split_ledger(&cluster_vals, &cluster_mults);

    // pi-side partners for every positive value, projections normalized
    let mut b_accumulated: Vec<Vec<f64>> = Vec::new();
    let mut b_clusters: Vec<Vec<Vec<f64>>> = Vec::new();
    for cluster in clusters.iter().filter(|c| c.value > 0.0) {
        let mut rows = Vec::with_capacity(cluster.a_rows.len());
        for a in &cluster.a_rows {
            let mut proj = pi.project_vector(a);
            for prev in &b_accumulated {
                let c = dot(&proj, prev);
                for (pv, qv) in proj.iter_mut().zip(prev) {
                    *pv -= c * qv;
                }
            }
            let norm = dot(&proj, &proj).sqrt();
            if norm == 0.0 {
                return Err(Error::Internal {
                    detail: format!("projection for principal value {} vanished", cluster.value),
                });
            }
            for pv in proj.iter_mut() {
                *pv /= norm;
            }
            b_accumulated.push(proj.clone());
            rows.push(proj);
        }
        b_clusters.push(rows);
    }

    // rest of pi: the zero eigenspace, split into the r_last partner
    // block and the q - p trailing vectors
    let leftover = q - b_accumulated.len();
    let z_rows = if leftover > 0 {
        complete_against(&b_accumulated, pi.ortho_basis(), leftover).to_row_vecs()
    } else {
        Vec::new()
    };
    let (b_last, b_trail) = z_rows.split_at(r_last);

    // sigma*-side: interior partners from the principal planes,
    // a*_i = (c a - b) / d with the per-vector cosine
    let interior_clusters: Vec<&ClusterRows> = clusters
        .iter()
        .filter(|c| c.value > 0.0 && c.value < 1.0)
        .collect();
    let b_interior_offset = if r0 > 0 { 1 } else { 0 };
    let mut a_star_interior: Vec<Vec<Vec<f64>>> = Vec::new();
    let mut b_star_interior: Vec<Vec<Vec<f64>>> = Vec::new();
    for (ci, cluster) in interior_clusters.iter().enumerate() {
        let b_rows = &b_clusters[b_interior_offset + ci];
        let mut a_star = Vec::with_capacity(cluster.a_rows.len());
        let mut b_star = Vec::with_capacity(cluster.a_rows.len());
        for (a, b) in cluster.a_rows.iter().zip(b_rows) {
            let c = dot(a, b);
            let d = (1.0 - c * c).sqrt();
            a_star.push(combine(c, a, -1.0, b, d));
            b_star.push(combine(1.0, a, -c, b, d));
        }
        a_star_interior.push(a_star);
        b_star_interior.push(b_star);
    }

    let a_last: Vec<Vec<f64>> = clusters
        .iter()
        .filter(|c| c.value == 0.0)
        .flat_map(|c| c.a_rows.clone())
        .collect();
    let a_star_last: Vec<Vec<f64>> = b_last.to_vec();
    let a_star_trail: Vec<Vec<f64>> = b_trail.iter().rev().cloned().collect();

    // complete to the shared value-1 block of sigma* and pi*
    let r0_prime = r0 + n - p - q;
    let mut known: Vec<Vec<f64>> = Vec::new();
    for cluster in &clusters {
        known.extend(cluster.a_rows.iter().cloned());
    }
    for rows in &a_star_interior {
        known.extend(rows.iter().cloned());
    }
    known.extend(a_star_last.iter().cloned());
    known.extend(a_star_trail.iter().cloned());
    let shared_star: Vec<Vec<f64>> = if r0_prime > 0 {
        complete_against(&known, &Matrix::identity(n), r0_prime).to_row_vecs()
    } else {
        Vec::new()
    };

    // assemble the four ordered bases
    let mut sigma_rows: Vec<Vec<f64>> = Vec::with_capacity(p);
    for cluster in &clusters {
        sigma_rows.extend(cluster.a_rows.iter().cloned());
    }

    let mut sigma_star_rows: Vec<Vec<f64>> = Vec::with_capacity(n - p);
    sigma_star_rows.extend(shared_star.iter().cloned());
    for rows in &a_star_interior {
        sigma_star_rows.extend(rows.iter().cloned());
    }
    sigma_star_rows.extend(a_star_last.iter().cloned());
    sigma_star_rows.extend(a_star_trail.iter().cloned());

    let mut pi_rows: Vec<Vec<f64>> = Vec::with_capacity(q);
    for rows in &b_clusters {
        pi_rows.extend(rows.iter().cloned());
    }
    pi_rows.extend(b_last.iter().cloned());
    pi_rows.extend(b_trail.iter().cloned());

    let mut pi_star_rows: Vec<Vec<f64>> = Vec::with_capacity(n - q);
    pi_star_rows.extend(shared_star.iter().cloned());
    for rows in &b_star_interior {
        pi_star_rows.extend(rows.iter().cloned());
    }
    pi_star_rows.extend(a_last.iter().cloned());

    let cosines: Vec<f64> = interior.iter().map(|(v, _)| v.sqrt()).collect();
    let interior_mults: Vec<usize> = interior.iter().map(|(_, m)| *m).collect();
    let spec = CanonicalSpec::new(n, p, q, r0, cosines, interior_mults, r_last)?;

    let form = CanonicalForm {
        matrix_p: inner_product_matrix(&sigma_rows, &sigma_star_rows, &pi_rows, &pi_star_rows),
        basis_sigma: Matrix::from_rows(&sigma_rows)?,
        basis_sigma_star: Matrix::from_rows(&sigma_star_rows)?,
        basis_pi: Matrix::from_rows(&pi_rows)?,
        basis_pi_star: Matrix::from_rows(&pi_star_rows)?,
        spec,
        swapped: false,
        dualized: false,
    };

    let built = build_canonical_matrix(&form.spec);
    let deviation = form.matrix_p.max_diff(&built);
    if deviation > FORM_ENTRY_TOL {
        return Err(Error::Internal {
            detail: format!("canonical matrix deviates from block layout by {deviation:e}"),
        });
    }
    Ok(form)
}

fn combine(ca: f64, a: &[f64], cb: f64, b: &[f64], scale: f64) -> Vec<f64> {
    a.iter()
        .zip(b)
        .map(|(x, y)| (ca * x + cb * y) / scale)
        .collect()
}

fn inner_product_matrix(
    sigma: &[Vec<f64>],
    sigma_star: &[Vec<f64>],
    pi: &[Vec<f64>],
    pi_star: &[Vec<f64>],
) -> Matrix {
    let mut rows: Vec<&Vec<f64>> = sigma.iter().collect();
    rows.extend(sigma_star.iter().rev());
    let mut cols: Vec<&Vec<f64>> = pi.iter().collect();
    cols.extend(pi_star.iter().rev());
    let n = rows.len();
    let mut p = Matrix::zeros(n, n);
    for (u, r) in rows.iter().enumerate() {
        for (v, c) in cols.iter().enumerate() {
            p.set(u, v, dot(r, c));
        }
    }
    p
}

/// Canonical form of the pair (sigma, pi*) obtained by permuting the
/// blocks of an existing form.
///
/// Interior values become `1 - c_i^2` with the same multiplicities and
/// the block orders `q - p` and `n - p - q` trade places. Interior
/// sigma*-rows flip sign so the permuted matrix lands exactly on the
/// printed +d/-d coupling pattern.
pub fn dual_permutation(cf: &CanonicalForm) -> CanonicalForm {
    let spec = &cf.spec;
    let (n, p, q) = (spec.n(), spec.p(), spec.q());
    let s = spec.interior_count();
    let extra = n - p - q;

    // partition the stored bases into their ledger blocks
    let sigma_sizes: Vec<usize> = std::iter::once(spec.r0())
        .chain(spec.multiplicities().iter().copied())
        .chain(std::iter::once(spec.r_last()))
        .collect();
    let sigma_blocks = split_rows(&cf.basis_sigma, &sigma_sizes);

    let sigma_star_sizes: Vec<usize> = std::iter::once(spec.r0_prime())
        .chain(spec.multiplicities().iter().copied())
        .chain([spec.r_last(), q - p])
        .collect();
    let sigma_star_blocks = split_rows(&cf.basis_sigma_star, &sigma_star_sizes);

    let pi_sizes: Vec<usize> = std::iter::once(spec.r0())
        .chain(spec.multiplicities().iter().copied())
        .chain([spec.r_last(), q - p])
        .collect();
    let pi_blocks = split_rows(&cf.basis_pi, &pi_sizes);

    let pi_star_sizes: Vec<usize> = std::iter::once(spec.r0_prime())
        .chain(spec.multiplicities().iter().copied())
        .chain(std::iter::once(spec.r_last()))
        .collect();
    let pi_star_blocks = split_rows(&cf.basis_pi_star, &pi_star_sizes);

    // split the shared value-1 block of sigma* into the new zero-partner
    // part (r0 rows) and the new trailing part (n - p - q rows)
    let shared = &sigma_star_blocks[0];
    let (g, h) = shared.split_at(spec.r0());

    let mut new_sigma: Vec<Vec<f64>> = Vec::with_capacity(p);
    new_sigma.extend(sigma_blocks[s + 1].iter().cloned());
    for i in (1..=s).rev() {
        new_sigma.extend(sigma_blocks[i].iter().cloned());
    }
    new_sigma.extend(sigma_blocks[0].iter().cloned());

    let mut new_pi: Vec<Vec<f64>> = Vec::with_capacity(n - q);
    new_pi.extend(pi_star_blocks[s + 1].iter().cloned());
    for i in (1..=s).rev() {
        new_pi.extend(pi_star_blocks[i].iter().cloned());
    }
    new_pi.extend(g.iter().cloned());
    new_pi.extend(h.iter().rev().cloned());

    let mut new_sigma_star: Vec<Vec<f64>> = Vec::with_capacity(n - p);
    new_sigma_star.extend(sigma_star_blocks[s + 1].iter().cloned());
    new_sigma_star.extend(sigma_star_blocks[s + 2].iter().cloned());
    for i in (1..=s).rev() {
        for row in &sigma_star_blocks[i] {
            new_sigma_star.push(row.iter().map(|v| -v).collect());
        }
    }
    new_sigma_star.extend(g.iter().cloned());
    new_sigma_star.extend(h.iter().cloned());

    let mut new_pi_star: Vec<Vec<f64>> = Vec::with_capacity(q);
    new_pi_star.extend(pi_blocks[s + 1].iter().cloned());
    new_pi_star.extend(pi_blocks[s + 2].iter().rev().cloned());
    for i in (1..=s).rev() {
        new_pi_star.extend(pi_blocks[i].iter().cloned());
    }
    new_pi_star.extend(pi_blocks[0].iter().cloned());

    let mut new_cosines: Vec<f64> = spec.d_values();
    new_cosines.reverse();
    let mut new_mults: Vec<usize> = spec.multiplicities().to_vec();
    new_mults.reverse();
    let new_spec = CanonicalSpec::new(
        n,
        p,
        n - q,
        spec.r_last(),
        new_cosines,
        new_mults,
        spec.r0(),
    )
    .expect("dual ledger stays consistent");
    debug_assert_eq!(new_spec.r0_prime(), spec.r_last() + q - p);
    debug_assert_eq!(new_spec.q() - new_spec.p(), extra);

    let matrix_p = inner_product_matrix(&new_sigma, &new_sigma_star, &new_pi, &new_pi_star);
    debug_assert!(matrix_p.max_diff(&build_canonical_matrix(&new_spec)) <= FORM_ENTRY_TOL);

    CanonicalForm {
        spec: new_spec,
        matrix_p,
        basis_sigma: Matrix::from_rows(&new_sigma).expect("rows finite"),
        basis_sigma_star: Matrix::from_rows(&new_sigma_star).expect("rows finite"),
        basis_pi: Matrix::from_rows(&new_pi).expect("rows finite"),
        basis_pi_star: Matrix::from_rows(&new_pi_star).expect("rows finite"),
        swapped: cf.swapped,
        dualized: cf.dualized,
    }
}

fn split_rows(m: &Matrix, sizes: &[usize]) -> Vec<Vec<Vec<f64>>> {
    let mut out = Vec::with_capacity(sizes.len());
    let mut start = 0;
    for &size in sizes {
        out.push((start..start + size).map(|i| m.row_vec(i)).collect());
        start += size;
    }
    debug_assert_eq!(start, m.rows());
    out
}

/// Constructs a pair of subspaces with the prescribed squared principal
/// values, using default tolerances.
pub fn synthesize_pair(
    n: usize,
    p: usize,
    q: usize,
    squared_values: &[f64],
) -> Result<(Subspace, Subspace)> {
    synthesize_pair_with(n, p, q, squared_values, &Tolerances::default())
}

/// Builds (sigma1, sigma2) of dimensions p and q in E_n whose principal
/// values are the given p squared cosines; unique up to orthogonal
/// motion, realized deterministically on the standard axis frame.
///
/// Requires `p <= q`, `n <= p + q`, values in [0,1], and multiplicity of
/// the value 1 at least `p + q - n` (the pair must share a subspace of
/// that dimension).
pub fn synthesize_pair_with(
    n: usize,
    p: usize,
    q: usize,
    squared_values: &[f64],
    tol: &Tolerances,
) -> Result<(Subspace, Subspace)> {
    if p == 0 || !(p <= q && q <= n) || n > p + q {
        return Err(Error::HypothesisViolation {
            detail: format!("need 1 <= p <= q <= n <= p + q, got n={n}, p={p}, q={q}"),
        });
    }
    if squared_values.len() != p {
        return Err(Error::HypothesisViolation {
            detail: format!("expected {p} squared values, got {}", squared_values.len()),
        });
    }
    for &v in squared_values {
        if !(0.0..=1.0).contains(&v) || !v.is_finite() {
            return Err(Error::InvalidPrincipalValue { value: v });
        }
    }
    let mut sorted = squared_values.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    snap_unit_interval(&mut sorted, tol.cluster);
    let (values, mults) = cluster_values(&sorted, tol.cluster);
    let (r0, interior, r_last) = split_ledger(&values, &mults);
    if p + q > n && r0 < p + q - n {
        return Err(Error::HypothesisViolation {
            detail: format!(
                "the pair shares a subspace of dimension >= {}, so value 1 needs \
                 multiplicity >= {}, got {r0}",
                p + q - n,
                p + q - n
            ),
        });
    }
    let cosines: Vec<f64> = interior.iter().map(|(v, _)| v.sqrt()).collect();
    let interior_mults: Vec<usize> = interior.iter().map(|(_, m)| *m).collect();

    if q == n {
        // the second subspace is all of E_n; feasibility forces every
        // value to be 1 and the first subspace is any p axes
        let s1 = Subspace::with_tolerances(n, axis_rows(n, p), tol)?;
        let s2 = Subspace::with_tolerances(n, Matrix::identity(n), tol)?;
        return Ok((s1, s2));
    }

    if p + q <= n {
        let spec = CanonicalSpec::new(n, p, q, r0, cosines, interior_mults, r_last)?;
        let pm = build_canonical_matrix(&spec);
        let s1 = Subspace::with_tolerances(n, axis_rows(n, p), tol)?;
        let s2 = Subspace::with_tolerances(n, column_rows(&pm, q), tol)?;
        return Ok((s1, s2));
    }

    // p + q > n: build the complement pair, which satisfies the layout
    // hypothesis, and return its complements
    let spec = CanonicalSpec::new(
        n,
        n - q,
        n - p,
        r0 - (p + q - n),
        cosines,
        interior_mults,
        r_last,
    )?;
    let pm = build_canonical_matrix(&spec);
    let star_small = Subspace::with_tolerances(n, axis_rows(n, n - q), tol)?;
    let star_large = Subspace::with_tolerances(n, column_rows(&pm, n - p), tol)?;
    let s1 = star_large.orthogonal_complement()?;
    let s2 = star_small.orthogonal_complement()?;
    Ok((s1, s2))
}

fn axis_rows(n: usize, count: usize) -> Matrix {
    let mut m = Matrix::zeros(count, n);
    for i in 0..count {
        m.set(i, i, 1.0);
    }
    m
}

/// First `count` columns of `p`, transposed into spanning rows.
fn column_rows(p: &Matrix, count: usize) -> Matrix {
    let mut m = Matrix::zeros(count, p.rows());
    for j in 0..count {
        for i in 0..p.rows() {
            m.set(j, i, p.get(i, j));
        }
    }
    m
}
