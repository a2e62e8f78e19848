use super::FiniteGroup;

/// Conjugacy classes of an enumerated group.
///
/// Classes are numbered by increasing representative, and each
/// representative is the smallest element index in its class, so class `0`
/// is always the identity class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClassData {
    group_order: usize,
    representatives: Vec<usize>,
    sizes: Vec<usize>,
    class_of: Vec<u32>,
    element_orders: Vec<u32>,
    /// `powers[c][k]` is the class of `rep(c)^k` for `0 ≤ k < order(c)`.
    powers: Vec<Vec<usize>>,
}

impl ConjugacyClassData {
    pub(crate) fn compute(g: &FiniteGroup) -> Self {
        let n = g.order();
        let mut class_of = vec![u32::MAX; n];
        let mut representatives = Vec::new();
        let mut sizes = Vec::new();
        let gens: Vec<usize> = g.generators().to_vec();
        let mut stack = Vec::new();
        for x in 0..n {
            if class_of[x] != u32::MAX {
                continue;
            }
            let c = representatives.len() as u32;
            representatives.push(x);
            class_of[x] = c;
            stack.push(x);
            let mut size = 1;
            // the orbit under conjugation by the generators is the full class
            while let Some(y) = stack.pop() {
                for &s in &gens {
                    let z = g.conjugate(y, s);
                    if class_of[z] == u32::MAX {
                        class_of[z] = c;
                        size += 1;
                        stack.push(z);
                    }
                }
            }
            sizes.push(size);
        }
        let element_orders: Vec<u32> = representatives.iter().map(|&r| g.element_order(r)).collect();
        let powers = representatives
            .iter()
            .map(|&r| {
                let o = g.element_order(r) as usize;
                let mut out = Vec::with_capacity(o);
                let mut acc = 0usize;
                for _ in 0..o {
                    out.push(class_of[acc] as usize);
                    acc = g.mul(acc, r);
                }
                out
            })
            .collect();
        ConjugacyClassData { group_order: n, representatives, sizes, class_of, element_orders, powers }
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    pub fn representative(&self, c: usize) -> usize {
        self.representatives[c]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn size(&self, c: usize) -> usize {
        self.sizes[c]
    }

    pub fn centralizer_order(&self, c: usize) -> usize {
        self.group_order / self.sizes[c]
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x] as usize
    }

    pub fn element_order(&self, c: usize) -> u32 {
        self.element_orders[c]
    }

    /// Class of `gᵏ` for `g` in class `c`.
    pub fn power_class(&self, c: usize, k: i64) -> usize {
        let o = self.element_orders[c] as i64;
        self.powers[c][k.rem_euclid(o) as usize]
    }

    pub fn inverse_class(&self, c: usize) -> usize {
        self.power_class(c, -1)
    }

    /// Elements of each class, by class.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.len()];
        for (x, &c) in self.class_of.iter().enumerate() {
            out[c as usize].push(x);
        }
        out
    }

    /// Classes whose elements have order coprime to `p`.
    pub fn p_regular_classes(&self, p: u32) -> Vec<usize> {
        (0..self.len()).filter(|&c| !self.element_orders[c].is_multiple_of(p)).collect()
    }
}
