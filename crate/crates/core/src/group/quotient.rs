use std::sync::Arc;

use super::{is_power_of, FiniteGroup, GroupError, ResidueMatrix};

/// A surjective homomorphism between enumerated groups, stored elementwise.
#[derive(Debug, Clone)]
pub struct QuotientMap {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    image: Vec<u32>,
    kernel: Vec<usize>,
}

impl QuotientMap {
    /// Builds the map from an arbitrary matrix-level function, checking that it
    /// is a surjective homomorphism (exhaustively on `x · s` for every element
    /// `x` and generator `s`).
    pub fn from_fn(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        f: impl Fn(&ResidueMatrix) -> ResidueMatrix,
    ) -> Result<Self, GroupError> {
        let mut image = Vec::with_capacity(source.order());
        for x in 0..source.order() {
            let y = f(&source.element(x));
            let idx = target.index_of(&y).ok_or(GroupError::TargetMismatch(x))?;
            image.push(idx as u32);
        }
        let map = Self::from_images(source, target, image)?;
        Ok(map)
    }

    /// Builds the map from element images, with the same checks as
    /// [`QuotientMap::from_fn`].
    pub fn from_images(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, image: Vec<u32>) -> Result<Self, GroupError> {
        if image.len() != source.order() {
            return Err(GroupError::Malformed("image list has the wrong length".into()));
        }
        if image[0] != 0 {
            return Err(GroupError::NotAHomomorphism);
        }
        for x in 0..source.order() {
            for &s in source.generators() {
                let xs = source.mul(x, s);
                if image[xs] as usize != target.mul(image[x] as usize, image[s] as usize) {
                    return Err(GroupError::NotAHomomorphism);
                }
            }
        }
        let mut hit = vec![false; target.order()];
        for &y in &image {
            hit[y as usize] = true;
        }
        let covered = hit.iter().filter(|&&h| h).count();
        if covered != target.order() {
            return Err(GroupError::NotSurjective { image: covered, target: target.order() });
        }
        let kernel: Vec<usize> = (0..source.order()).filter(|&x| image[x] == 0).collect();
        debug_assert_eq!(kernel.len() * target.order(), source.order());
        Ok(QuotientMap { source, target, image, kernel })
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn apply(&self, x: usize) -> usize {
        self.image[x] as usize
    }

    /// Kernel element indices, increasing.
    pub fn kernel(&self) -> &[usize] {
        &self.kernel
    }

    /// Fails unless every kernel element has `p`-power order.
    pub fn check_p_kernel(&self, p: u32) -> Result<(), GroupError> {
        for &k in &self.kernel {
            let o = self.source.element_order(k);
            if !is_power_of(o, p) {
                return Err(GroupError::NonPGroupKernel(k, o, p));
            }
        }
        Ok(())
    }

    /// Target class of each source class.
    pub fn class_map(&self) -> Vec<usize> {
        let sc = self.source.conjugacy_classes();
        let tc = self.target.conjugacy_classes();
        sc.representatives().iter().map(|&r| tc.class_of(self.apply(r))).collect()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &QuotientMap) -> Result<QuotientMap, GroupError> {
        if !Arc::ptr_eq(&self.target, &other.source) {
            return Err(GroupError::Malformed("maps are not composable".into()));
        }
        let image = self.image.iter().map(|&y| other.image[y as usize]).collect();
        QuotientMap::from_images(self.source.clone(), other.target.clone(), image)
    }

    pub fn identity(g: Arc<FiniteGroup>) -> QuotientMap {
        let image = (0..g.order() as u32).collect();
        QuotientMap { source: g.clone(), target: g, image, kernel: vec![0] }
    }
}

/// Entrywise reduction from a group mod `pⁿ` onto a group mod `p^m`, with a
/// `p`-group kernel check.
pub fn reduction_map(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, p: u32) -> Result<QuotientMap, GroupError> {
    let m = target.modulus();
    if !source.modulus().is_multiple_of(m) || source.dim() != target.dim() {
        return Err(GroupError::Malformed(format!(
            "cannot reduce modulus {} onto {}",
            source.modulus(),
            m
        )));
    }
    let map = QuotientMap::from_fn(source, target, |x| x.reduce(m))?;
    map.check_p_kernel(p)?;
    Ok(map)
}
