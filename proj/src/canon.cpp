#include "latenum/canon.hpp"

#include <algorithm>
#include <numeric>

namespace latenum {

namespace {

void append_mask(std::vector<std::uint8_t>& out, Mask m, GroundSize k) {
    if (k.k > 8) out.push_back(static_cast<std::uint8_t>(m >> 8));
    out.push_back(static_cast<std::uint8_t>(m & 0xff));
}

}  // namespace

// --------------------------------------------------------- IndexPermutation

IndexPermutation::IndexPermutation(std::vector<int> image) : image_(std::move(image)) {
    std::vector<int> sorted = image_;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] != static_cast<int>(i) + 1) {
            throw DomainError("not a permutation of 1.." + std::to_string(image_.size()));
        }
    }
}

IndexPermutation IndexPermutation::identity(GroundSize k) {
    std::vector<int> image(k.k);
    std::iota(image.begin(), image.end(), 1);
    return IndexPermutation(std::move(image));
}

Mask IndexPermutation::apply(Mask m) const {
    Mask out = 0;
    for (std::size_t i = 0; i < image_.size(); ++i) {
        if (m >> i & 1) out |= bit(image_[i]);
    }
    return out;
}

IndexPermutation IndexPermutation::inverse() const {
    std::vector<int> inv(image_.size());
    for (std::size_t i = 0; i < image_.size(); ++i) inv[image_[i] - 1] = static_cast<int>(i) + 1;
    return IndexPermutation(std::move(inv));
}

std::vector<IndexPermutation> IndexPermutation::all(GroundSize k) {
    std::vector<int> image(k.k);
    std::iota(image.begin(), image.end(), 1);
    std::vector<IndexPermutation> out;
    do {
        out.emplace_back(image);
    } while (std::next_permutation(image.begin(), image.end()));
    return out;
}

// ------------------------------------------------------------- CanonicalKey

std::string CanonicalKey::hex() const {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (auto b : bytes) {
        out += digits[b >> 4];
        out += digits[b & 0xf];
    }
    return out;
}

CanonicalKey CanonicalKey::from_hex(const std::string& hex) {
    if (hex.size() % 2 != 0) throw MalformedInput("odd-length hex key");
    auto nibble = [&](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        throw MalformedInput("bad hex digit in key '" + hex + "'");
    };
    CanonicalKey key;
    for (std::size_t i = 0; i < hex.size(); i += 2) {
        key.bytes.push_back(static_cast<std::uint8_t>(nibble(hex[i]) << 4 | nibble(hex[i + 1])));
    }
    return key;
}

// ---------------------------------------------------------------- relabeling

Configuration permute_config(const Configuration& cfg, const IndexPermutation& sigma) {
    if (sigma.k() != cfg.k()) {
        throw DomainError("permutation of size " + std::to_string(sigma.k().k) +
                          " applied to configuration of size " + std::to_string(cfg.k().k));
    }
    ClosureBuilder builder(cfg.k());
    for (Mask m : subset_domain(cfg.k()).members) {
        const Mask r = cfg.class_of(m);
        if (r != m) builder.merge(sigma.apply(r), sigma.apply(m));
    }
    return builder.configuration();
}

CanonicalKey encode_representatives(const Configuration& cfg) {
    CanonicalKey key;
    for (Mask r : cfg.representative_vector()) append_mask(key.bytes, r, cfg.k());
    return key;
}

Configuration decode_representatives(GroundSize k, const CanonicalKey& key) {
    const auto domain = subset_domain(k);
    const std::size_t width = k.k > 8 ? 2 : 1;
    if (key.bytes.size() != domain.size() * width) {
        throw MalformedInput("key length does not match k=" + std::to_string(k.k));
    }
    ClosureBuilder builder(k);
    for (std::size_t i = 0; i < domain.size(); ++i) {
        Mask r = key.bytes[i * width];
        if (width == 2) r = r << 8 | key.bytes[i * width + 1];
        if (r > k.full() || popcount(r) < 2) throw MalformedInput("key entry is not a subset");
        builder.merge(r, domain.members[i]);
    }
    Configuration cfg = builder.configuration();
    if (encode_representatives(cfg) != key) throw MalformedInput("key is not a closed configuration");
    return cfg;
}

// ------------------------------------------------------------- Canonicalizer

Canonicalizer::Canonicalizer(GroundSize k)
    : k_(k), domain_(subset_domain(k).members), perms_(IndexPermutation::all(k)) {
    if (k.k <= 7) {
        for (std::size_t p = 0; p < perms_.size(); ++p) cache_.push_back(tables(p));
    }
}

Canonicalizer::Tables Canonicalizer::tables(std::size_t perm) const {
    if (perm < cache_.size()) return cache_[perm];
    const auto& sigma = perms_[perm];
    const auto inv = sigma.inverse();
    Tables t{std::vector<Mask>(k_.mask_count()), std::vector<Mask>(k_.mask_count())};
    for (Mask m = 0; m < k_.mask_count(); ++m) {
        t.image[m] = sigma.apply(m);
        t.preimage[m] = inv.apply(m);
    }
    return t;
}

void Canonicalizer::relabeled(const Configuration& cfg, const Tables& t, std::vector<Mask>& out) const {
    // best[r]: least image of any member of the block represented by r.
    std::vector<Mask> best(k_.mask_count(), ~Mask{0});
    for (Mask m = 0; m < k_.mask_count(); ++m) {
        Mask& b = best[cfg.class_of(m)];
        if (b == ~Mask{0} || canonical_less(t.image[m], b)) b = t.image[m];
    }
    out.clear();
    for (Mask u : domain_) out.push_back(best[cfg.class_of(t.preimage[u])]);
}

std::size_t Canonicalizer::best_permutation(const Configuration& cfg) const {
    if (cfg.k() != k_) throw DomainError("canonicalizer size mismatch");
    std::vector<Mask> best, trial;
    std::size_t arg = 0;
    for (std::size_t p = 0; p < perms_.size(); ++p) {
        if (p < cache_.size()) {
            relabeled(cfg, cache_[p], trial);
        } else {
            relabeled(cfg, tables(p), trial);
        }
        if (p == 0 || trial < best) {
            best.swap(trial);
            arg = p;
        }
    }
    return arg;
}

CanonicalKey Canonicalizer::key(const Configuration& cfg) const {
    std::vector<Mask> vec;
    const std::size_t p = best_permutation(cfg);
    relabeled(cfg, p < cache_.size() ? cache_[p] : tables(p), vec);
    CanonicalKey key;
    for (Mask r : vec) append_mask(key.bytes, r, k_);
    return key;
}

Configuration Canonicalizer::form(const Configuration& cfg) const {
    return permute_config(cfg, perms_[best_permutation(cfg)]);
}

bool Canonicalizer::is_canonical(const Configuration& cfg) const {
    if (cfg.k() != k_) throw DomainError("canonicalizer size mismatch");
    const std::size_t n = k_.mask_count();
    std::vector<Mask> ident;
    ident.reserve(domain_.size());
    for (Mask u : domain_) ident.push_back(cfg.class_of(u));
    std::vector<Mask> best(n);
    for (std::size_t p = 1; p < perms_.size(); ++p) {
        const Tables local = p < cache_.size() ? Tables{} : tables(p);
        const Tables& t = p < cache_.size() ? cache_[p] : local;
        std::fill(best.begin(), best.end(), ~Mask{0});
        for (Mask m = 0; m < n; ++m) {
            Mask& b = best[cfg.class_of(m)];
            if (b == ~Mask{0} || canonical_less(t.image[m], b)) b = t.image[m];
        }
        for (std::size_t i = 0; i < domain_.size(); ++i) {
            const Mask v = best[cfg.class_of(t.preimage[domain_[i]])];
            if (v < ident[i]) return false;
            if (v > ident[i]) break;
        }
    }
    return true;
}

CanonicalKey canonical_key(const Configuration& cfg) { return Canonicalizer(cfg.k()).key(cfg); }

Configuration canonical_form(const Configuration& cfg) { return Canonicalizer(cfg.k()).form(cfg); }

bool are_equivalent(const Configuration& a, const Configuration& b) {
    if (a.k() != b.k()) {
        throw DomainError("cannot compare configurations of sizes " + std::to_string(a.k().k) +
                          " and " + std::to_string(b.k().k));
    }
    return canonical_key(a) == canonical_key(b);
}

}  // namespace latenum
