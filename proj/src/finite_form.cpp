#include "linkform/finite_form.hpp"

namespace linkform {

FiniteForm::FiniteForm(const GramPairing& g, std::uint64_t bound)
{
    Integer total = g.group_order();
    if (total > Integer(static_cast<unsigned long>(bound)))
        throw OracleBoundExceeded("group order " + total.get_str() + " exceeds oracle bound " +
                                  std::to_string(bound));
    prime_ = g.prime.get_ui();
    size_ = total.get_ui();
    modulus_ = 1;
    for (const auto& o : g.orders) {
        radix_.push_back(o.get_ui());
        if (o.get_ui() > modulus_) modulus_ = o.get_ui();
    }
    std::size_t n = radix_.size();
    stride_.resize(n);
    std::uint64_t st = 1;
    for (std::size_t i = n; i-- > 0;) {
        stride_[i] = st;
        st *= radix_[i];
    }
    gram_.resize(n * n);
    Integer mod_z(static_cast<unsigned long>(modulus_));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Rational v = g.gram[i][j].value() * Rational(mod_z);
            if (v.get_den() != 1) throw DomainError("pairing value outside (1/p^K)Z/Z");
            gram_[i * n + j] = mod(v.get_num(), mod_z).get_ui();
        }

    coords_.resize(size_ * n);
    dual_.resize(size_ * n);
    self_.resize(size_);
    order_.resize(size_);
    for (std::uint64_t x = 0; x < size_; ++x) {
        std::uint64_t rem = x;
        for (std::size_t i = 0; i < n; ++i) {
            coords_[x * n + i] = static_cast<std::uint32_t>(rem / stride_[i]);
            rem %= stride_[i];
        }
        const std::uint32_t* c = &coords_[x * n];
        for (std::size_t j = 0; j < n; ++j) {
            std::uint64_t acc = 0;
            for (std::size_t i = 0; i < n; ++i) acc = (acc + c[i] * gram_[i * n + j]) % modulus_;
            dual_[x * n + j] = acc;
        }
        std::uint64_t s = 0, ord = 1;
        for (std::size_t j = 0; j < n; ++j) {
            s = (s + dual_[x * n + j] * c[j]) % modulus_;
            if (c[j]) {
                std::uint64_t o = radix_[j];
                std::uint64_t t = c[j];
                while (t % prime_ == 0) {
                    t /= prime_;
                    o /= prime_;
                }
                if (o > ord) ord = o;
            }
        }
        self_[x] = s;
        order_[x] = ord;
    }
}

std::uint64_t FiniteForm::index_of(const std::vector<std::uint32_t>& c) const
{
    std::uint64_t x = 0;
    for (std::size_t i = 0; i < rank(); ++i) x += (c[i] % radix_[i]) * stride_[i];
    return x;
}

std::uint64_t FiniteForm::add(std::uint64_t x, std::uint64_t y) const
{
    const std::uint32_t* a = coords(x);
    const std::uint32_t* b = coords(y);
    std::uint64_t z = 0;
    for (std::size_t i = 0; i < rank(); ++i) z += ((a[i] + b[i]) % radix_[i]) * stride_[i];
    return z;
}

std::uint64_t FiniteForm::scale(std::uint64_t x, std::uint64_t c) const
{
    const std::uint32_t* a = coords(x);
    std::uint64_t z = 0;
    for (std::size_t i = 0; i < rank(); ++i) z += ((a[i] * c) % radix_[i]) * stride_[i];
    return z;
}

std::uint64_t FiniteForm::generator(std::size_t i) const { return stride_[i]; }

std::uint64_t FiniteForm::pair(std::uint64_t x, std::uint64_t y) const
{
    const std::uint64_t* d = &dual_[x * rank()];
    const std::uint32_t* c = coords(y);
    std::uint64_t acc = 0;
    for (std::size_t j = 0; j < rank(); ++j) acc = (acc + d[j] * c[j]) % modulus_;
    return acc;
}

std::vector<char> FiniteForm::span(const std::vector<std::uint64_t>& gens) const
{
    std::vector<char> in(size_, 0);
    std::vector<std::uint64_t> elems{0};
    in[0] = 1;
    for (auto gx : gens) {
        if (in[gx]) continue;
        // Extend by multiples of gx until they fall back into the subgroup.
        std::vector<std::uint64_t> coset_reps;
        std::uint64_t m = gx;
        while (!in[m]) {
            coset_reps.push_back(m);
            m = add(m, gx);
        }
        std::size_t base = elems.size();
        for (auto r : coset_reps)
            for (std::size_t i = 0; i < base; ++i) {
                std::uint64_t z = add(elems[i], r);
                if (!in[z]) {
                    in[z] = 1;
                    elems.push_back(z);
                }
            }
    }
    return in;
}

bool FiniteForm::nonsingular() const
{
    for (std::uint64_t x = 1; x < size_; ++x) {
        bool hit = false;
        for (std::size_t j = 0; j < rank() && !hit; ++j) hit = dual_[x * rank() + j] != 0;
        if (!hit) return false;
    }
    return true;
}

}  // namespace linkform
