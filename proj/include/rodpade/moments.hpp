#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include <rodpade/laurent.hpp>
#include <rodpade/poly.hpp>
#include <rodpade/rational.hpp>

namespace rodpade
{

/// Lazily extended, memoized moment sequence k -> f_k = phi_f(t^k) of a
/// series f = sum_k f_k z^-(k+1).
///
/// Copies share one cache. Extension happens under a mutex and only
/// appends, so a value once returned never changes.
class MomentSeq
{
public:
    /// Appends moments to `cache` until it holds at least `count` entries.
    using Extender = std::function<void(std::vector<Rational> &cache, std::size_t count)>;

    MomentSeq() : MomentSeq(zero()) {}

    MomentSeq(std::string label, Extender extend)
        : state_(std::make_shared<State>(std::move(label), std::move(extend), false))
    {
    }

    /// Sequence given term by term.
    static MomentSeq from_generator(std::string label, std::function<Rational(std::size_t)> gen)
    {
        return MomentSeq(std::move(label), [gen = std::move(gen)](std::vector<Rational> &cache, std::size_t count) {
            while (cache.size() < count) {
                cache.push_back(gen(cache.size()));
            }
        });
    }

    /// The moments of the zero series; its tails are exact.
    static MomentSeq zero(std::string label = "0")
    {
        MomentSeq s(std::move(label), [](std::vector<Rational> &cache, std::size_t count) {
            cache.resize(std::max(cache.size(), count));
        });
        s.state_->is_zero = true;
        return s;
    }

    const std::string &label() const
    {
        return state_->label;
    }

    bool is_zero() const
    {
        return state_->is_zero;
    }

    Rational operator[](std::size_t k) const
    {
        std::lock_guard lock(state_->mutex);
        ensure_locked(k + 1);
        return state_->cache[k];
    }

    /// f_0, ..., f_{count-1}.
    std::vector<Rational> prefix(std::size_t count) const
    {
        std::lock_guard lock(state_->mutex);
        ensure_locked(count);
        return {state_->cache.begin(), state_->cache.begin() + static_cast<std::ptrdiff_t>(count)};
    }

    /// sum_{k < depth} f_k z^-(k+1); exact only for the zero sequence.
    LaurentTail tail(std::size_t depth) const
    {
        return LaurentTail::from_moments(prefix(depth), is_zero());
    }

    /// Moments of pi(z^k f): j -> f_{j+k}.
    MomentSeq shifted(std::size_t k, std::string label = {}) const
    {
        if (label.empty()) {
            label = "z^" + std::to_string(k) + "*" + this->label();
        }
        if (is_zero()) {
            return zero(std::move(label));
        }
        MomentSeq base = *this;
        return MomentSeq(std::move(label), [base, k](std::vector<Rational> &cache, std::size_t count) {
            if (cache.size() >= count) {
                return;
            }
            auto p = base.prefix(count + k);
            for (std::size_t j = cache.size(); j < count; ++j) {
                cache.push_back(p[j + k]);
            }
        });
    }

    /// Termwise scaled copy.
    MomentSeq scaled(const Rational &c, std::string label) const
    {
        MomentSeq base = *this;
        return MomentSeq(std::move(label), [base, c](std::vector<Rational> &cache, std::size_t count) {
            if (cache.size() >= count) {
                return;
            }
            auto p = base.prefix(count);
            for (std::size_t j = cache.size(); j < count; ++j) {
                cache.push_back(c * p[j]);
            }
        });
    }

private:
    struct State {
        State(std::string l, Extender e, bool z) : label(std::move(l)), extend(std::move(e)), is_zero(z) {}
        std::string label;
        Extender extend;
        bool is_zero;
        std::mutex mutex;
        std::vector<Rational> cache;
    };

    void ensure_locked(std::size_t count) const
    {
        if (state_->cache.size() >= count) {
            return;
        }
        // Grow geometrically so repeated small extensions stay cheap.
        const std::size_t target = std::max(count, state_->cache.size() + state_->cache.size() / 2);
        state_->extend(state_->cache, target);
    }

    std::shared_ptr<State> state_;
};

/// phi_f(P) = sum_k p_k f_k.
inline Rational phi(const MomentSeq &f, const Poly &p)
{
    if (p.is_zero()) {
        return Rational(0);
    }
    const auto mom = f.prefix(p.size());
    Rational s(0);
    for (std::size_t k = 0; k < p.size(); ++k) {
        s += p.coeffs()[k] * mom[k];
    }
    return s;
}

/// phi_f(t^k P) for k = 0 .. count-1.
inline std::vector<Rational> shifted_phi(const MomentSeq &f, const Poly &p, std::size_t count)
{
    std::vector<Rational> out(count);
    if (p.is_zero() || count == 0) {
        return out;
    }
    const auto mom = f.prefix(p.size() + count - 1);
    for (std::size_t k = 0; k < count; ++k) {
        for (std::size_t i = 0; i < p.size(); ++i) {
            out[k] += p.coeffs()[i] * mom[i + k];
        }
    }
    return out;
}

} // namespace rodpade
