use std::fmt::Write as _;
use std::sync::Arc;

use super::dixon::{dixon_schneider, DixonResult};
use crate::error::{Error, Result};
use crate::exactnum::cyclotomic::weighted_product_sum;
use crate::exactnum::{Cyclotomic, CyclotomicField, Rational};
use crate::permgroup::{ClassStructure, PermGroup};

/// Largest class count accepted by [`CharacterTable::compute`].
pub const CLASS_COUNT_BOUND: usize = 300;

/// Exact ordinary character table. Row 0 is the trivial character; the
/// remaining rows are sorted by degree, then by value tuple.
#[derive(Clone)]
pub struct CharacterTable {
    classes: Arc<ClassStructure>,
    field: Arc<CyclotomicField>,
    degrees: Vec<u64>,
    int_values: Vec<Vec<Vec<i64>>>,
    values: Vec<Vec<Cyclotomic>>,
    lifting_prime: u64,
}

impl std::fmt::Debug for CharacterTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CharacterTable")
            .field("order", &self.group().order())
            .field("exponent", &self.exponent())
            .field("degrees", &self.degrees)
            .finish()
    }
}

fn inverse_permuted(row: &[Vec<i64>], classes: &ClassStructure) -> Vec<Vec<i64>> {
    (0..row.len())
        .map(|k| row[classes.inverse_class(k)].clone())
        .collect()
}

/// Exact row orthogonality and centralizer orders from column sums.
fn verify(classes: &ClassStructure, field: &Arc<CyclotomicField>, res: &DixonResult) -> bool {
    let centralizers: Vec<u64> = classes
        .classes()
        .iter()
        .map(|c| c.centralizer_order)
        .collect();
    orthogonal(classes, field, &res.values, &centralizers)
}

fn orthogonal(
    classes: &ClassStructure,
    field: &Arc<CyclotomicField>,
    values: &[Vec<Vec<i64>>],
    centralizers: &[u64],
) -> bool {
    let r = classes.len();
    if values.len() != r || centralizers.len() != r {
        return false;
    }
    let order = classes.group().order() as i64;
    let sizes: Vec<i64> = classes.classes().iter().map(|c| c.size as i64).collect();
    let conj: Vec<Vec<Vec<i64>>> = values
        .iter()
        .map(|row| inverse_permuted(row, classes))
        .collect();
    for i in 0..r {
        for j in i..r {
            let s = weighted_product_sum(field, &sizes, &values[i], &conj[j]);
            let expected = if i == j { order } else { 0 };
            if s != Cyclotomic::from_int(field, expected) {
                return false;
            }
        }
    }
    let ones = vec![1i64; r];
    for k in 0..r {
        let col: Vec<Vec<i64>> = values.iter().map(|row| row[k].clone()).collect();
        let col_conj: Vec<Vec<i64>> = values
            .iter()
            .map(|row| row[classes.inverse_class(k)].clone())
            .collect();
        let s = weighted_product_sum(field, &ones, &col, &col_conj);
        if s != Cyclotomic::from_int(field, centralizers[k] as i64) {
            return false;
        }
    }
    true
}

impl CharacterTable {
    pub fn compute(group: &PermGroup) -> Result<Self> {
        Self::from_classes(Arc::new(ClassStructure::compute(group)?))
    }

    pub fn from_classes(classes: Arc<ClassStructure>) -> Result<Self> {
        if classes.len() > CLASS_COUNT_BOUND {
            return Err(Error::capacity(
                "conjugacy classes for a character table",
                CLASS_COUNT_BOUND as u64,
            ));
        }
        let field = CyclotomicField::new(classes.exponent());
        let res = dixon_schneider(&classes, &field, |res| verify(&classes, &field, res))?;
        let mut rows: Vec<(u64, Vec<Vec<i64>>)> = res.degrees.into_iter().zip(res.values).collect();
        let trivial: Vec<Vec<i64>> = (0..classes.len())
            .map(|_| field.power(0).to_vec())
            .collect();
        rows.sort_by(|a, b| {
            let key = |row: &(u64, Vec<Vec<i64>>)| row.1 != trivial;
            (a.0, key(a))
                .cmp(&(b.0, key(b)))
                .then_with(|| a.1.cmp(&b.1))
        });
        if rows[0].1 != trivial {
            return Err(Error::InternalConsistency(
                "trivial character missing".into(),
            ));
        }
        let values = rows
            .iter()
            .map(|(_, row)| {
                row.iter()
                    .map(|c| {
                        Cyclotomic::from_coeffs(
                            &field,
                            c.iter().map(|&x| Rational::from_int(x)).collect(),
                        )
                    })
                    .collect()
            })
            .collect();
        let (degrees, int_values) = rows.into_iter().unzip();
        Ok(CharacterTable {
            classes,
            field,
            degrees,
            int_values,
            values,
            lifting_prime: res.prime,
        })
    }

    /// Recheck row and column orthogonality exactly, with column sums compared
    /// against externally supplied centralizer orders, and `Σ χ(1)² = |G|`.
    pub fn check_orthogonality(&self, centralizer_orders: &[u64]) -> bool {
        let degree_sum: u64 = self.degrees.iter().map(|d| d * d).sum();
        degree_sum == self.group().order()
            && orthogonal(
                &self.classes,
                &self.field,
                &self.int_values,
                centralizer_orders,
            )
    }

    pub fn group(&self) -> &PermGroup {
        self.classes.group()
    }

    pub fn classes(&self) -> &Arc<ClassStructure> {
        &self.classes
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    /// Exponent of the group; values live in `Q(ζ_e)`.
    pub fn exponent(&self) -> u64 {
        self.field.conductor()
    }

    /// Prime `q` of the successful Dixon–Schneider run.
    pub fn lifting_prime(&self) -> u64 {
        self.lifting_prime
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> u64 {
        self.degrees[i]
    }

    pub fn row(&self, i: usize) -> &[Cyclotomic] {
        &self.values[i]
    }

    pub fn value(&self, i: usize, k: usize) -> &Cyclotomic {
        &self.values[i][k]
    }

    /// Integer power-basis coordinates of `χ_i` on class `k`.
    pub fn int_value(&self, i: usize, k: usize) -> &[i64] {
        &self.int_values[i][k]
    }

    pub fn int_row(&self, i: usize) -> &[Vec<i64>] {
        &self.int_values[i]
    }

    /// `(1/|G|) Σ_C |C| θ(x_C) conj(ψ(x_C))`.
    pub fn inner_product(&self, theta: &[Cyclotomic], psi: &[Cyclotomic]) -> Result<Cyclotomic> {
        let r = self.classes.len();
        if theta.len() != r || psi.len() != r {
            return Err(Error::MalformedInput(format!(
                "class functions need {r} values, got {} and {}",
                theta.len(),
                psi.len()
            )));
        }
        let mut acc = Cyclotomic::zero(&self.field);
        for (k, (a, b)) in theta.iter().zip(psi).enumerate() {
            let term = a.coerce_to(&self.field) * b.coerce_to(&self.field).conj();
            acc = acc + term.scale(&Rational::from_int(self.classes.class(k).size as i64));
        }
        Ok(acc.scale(&Rational::new(1, self.group().order() as i128)))
    }

    /// Multiplicities of the irreducibles in a class function; a domain error
    /// if the function is not a character.
    pub fn decompose(&self, theta: &[Cyclotomic]) -> Result<Vec<u64>> {
        (0..self.len())
            .map(|i| {
                let ip = self.inner_product(theta, &self.values[i])?;
                ip.to_rational()
                    .and_then(|q| q.to_i64())
                    .filter(|&m| m >= 0)
                    .map(|m| m as u64)
                    .ok_or_else(|| Error::Domain("class function is not a character".into()))
            })
            .collect()
    }

    /// Row index of an irreducible character given by its values.
    pub fn find_row(&self, theta: &[Cyclotomic]) -> Option<usize> {
        (0..self.len()).find(|&i| {
            self.values[i]
                .iter()
                .zip(theta)
                .all(|(a, b)| *a == b.coerce_to(&self.field))
        })
    }

    /// Multiplicities of `Irr(N)` (rows of `normal_table`) in `χ_row|_N`.
    pub fn restrict_to_normal(
        &self,
        row: usize,
        normal_table: &CharacterTable,
    ) -> Result<Vec<u64>> {
        let n = normal_table.group();
        if !n.is_normal_in(self.group()) {
            return Err(Error::Domain("subgroup is not normal".into()));
        }
        let fused: Vec<usize> = normal_table
            .classes
            .classes()
            .iter()
            .map(|c| {
                self.classes
                    .class_of(&c.representative)
                    .ok_or_else(|| Error::Domain("subgroup element outside the group".into()))
            })
            .collect::<Result<_>>()?;
        let restricted: Vec<Cyclotomic> =
            fused.iter().map(|&k| self.values[row][k].clone()).collect();
        let combined = if self.exponent() % normal_table.exponent() == 0 {
            Arc::clone(&self.field)
        } else {
            CyclotomicField::new(crate::exactnum::arith::lcm(
                self.exponent(),
                normal_table.exponent(),
            ))
        };
        let mut mults = Vec::with_capacity(normal_table.len());
        for j in 0..normal_table.len() {
            let mut acc = Cyclotomic::zero(&combined);
            for (l, chi) in restricted.iter().enumerate() {
                let psi = normal_table.values[j][l].coerce_to(&combined).conj();
                let term = chi.coerce_to(&combined) * psi;
                acc = acc
                    + term.scale(&Rational::from_int(
                        normal_table.classes.class(l).size as i64,
                    ));
            }
            let m = acc
                .scale(&Rational::new(1, n.order() as i128))
                .to_rational()
                .and_then(|q| q.to_i64())
                .filter(|&m| m >= 0)
                .ok_or_else(|| {
                    Error::InternalConsistency("non-integral restriction multiplicity".into())
                })?;
            mults.push(m as u64);
        }
        let total: u64 = mults
            .iter()
            .zip(normal_table.degrees())
            .map(|(m, d)| m * d)
            .sum();
        if total != self.degrees[row] {
            return Err(Error::InternalConsistency(format!(
                "restriction degrees sum to {total}, expected {}",
                self.degrees[row]
            )));
        }
        Ok(mults)
    }

    /// One header row (`size:representative` per class) followed by one row per character.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("chi");
        for c in self.classes.classes() {
            let _ = write!(out, "\t{}:{}", c.size, c.representative.to_cycle_string());
        }
        out.push('\n');
        for (i, row) in self.values.iter().enumerate() {
            let _ = write!(out, "X.{}", i + 1);
            for v in row {
                let _ = write!(out, "\t{}", v.to_poly_string());
            }
            out.push('\n');
        }
        out
    }

    /// Whether values on a class and its inverse class are complex conjugates.
    pub fn conjugation_consistent(&self) -> bool {
        self.values
            .iter()
            .all(|row| (0..row.len()).all(|k| row[self.classes.inverse_class(k)] == row[k].conj()))
    }
}

pub fn character_table(group: &PermGroup) -> Result<CharacterTable> {
    CharacterTable::compute(group)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::builders::{alternating, cyclic, symmetric};

    fn sorted_degrees(t: &CharacterTable) -> Vec<u64> {
        let mut d = t.degrees().to_vec();
        d.sort_unstable();
        d
    }

    #[test]
    fn small_tables() {
        let s3 = character_table(&symmetric(3)).unwrap();
        assert_eq!(s3.degrees(), &[1, 1, 2]);
        let a5 = character_table(&alternating(5)).unwrap();
        assert_eq!(sorted_degrees(&a5), vec![1, 3, 3, 4, 5]);
        assert!(a5.conjugation_consistent());
        let c5 = character_table(&cyclic(5)).unwrap();
        assert_eq!(c5.degrees(), &[1; 5]);
    }

    #[test]
    fn inner_products() {
        let g = symmetric(3);
        let t = character_table(&g).unwrap();
        let f = Arc::clone(t.field());
        // Permutation character: number of fixed points.
        let perm_char: Vec<Cyclotomic> = t
            .classes()
            .classes()
            .iter()
            .map(|c| {
                let fixed = (0..3).filter(|&i| c.representative.image(i) == i).count();
                Cyclotomic::from_int(&f, fixed as i64)
            })
            .collect();
        assert_eq!(
            t.inner_product(t.row(0), &perm_char).unwrap(),
            Cyclotomic::one(&f)
        );
        assert_eq!(t.decompose(&perm_char).unwrap(), vec![1, 0, 1]);
        for i in 0..t.len() {
            assert_eq!(
                t.inner_product(t.row(i), t.row(i)).unwrap(),
                Cyclotomic::one(&f)
            );
        }
    }

    #[test]
    fn restriction_to_a3() {
        let g = symmetric(3);
        let t = character_table(&g).unwrap();
        let n = g.derived_subgroup();
        let tn = character_table(&n).unwrap();
        assert_eq!(t.restrict_to_normal(0, &tn).unwrap(), vec![1, 0, 0]);
        assert_eq!(t.restrict_to_normal(2, &tn).unwrap(), vec![0, 1, 1]);
        let h = g.subgroup(vec![crate::permgroup::Permutation::parse_cycles(
            3, "(1,2)",
        )
        .unwrap()]);
        let th = character_table(&h).unwrap();
        assert!(matches!(
            t.restrict_to_normal(0, &th),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn tsv_export() {
        let t = character_table(&symmetric(3)).unwrap();
        let tsv = t.to_tsv();
        let lines: Vec<&str> = tsv.lines().collect();
        assert_eq!(lines.len(), 4);
        assert!(lines[0].starts_with("chi\t1:()"));
        assert_eq!(lines[1], "X.1\t1\t1\t1");
    }
}
