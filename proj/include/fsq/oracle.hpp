#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "fsq/bytes.hpp"
#include "fsq/challenge.hpp"
#include "fsq/xof.hpp"

namespace fsq::rom {

// Random oracle H: bytes -> challenge value in a declared space.
// Implementations are deterministic over their lifetime; the query counter
// is the only mutable state and is safe to bump concurrently.
class RandomOracle {
  public:
    explicit RandomOracle(pcip::ChallengeSpace space) : space_(space) {}
    virtual ~RandomOracle() = default;

    uint64_t query(const Bytes& input) const {
        query_count_.fetch_add(1, std::memory_order_relaxed);
        return evaluate(input);
    }

    const pcip::ChallengeSpace& space() const { return space_; }
    uint64_t query_count() const { return query_count_.load(std::memory_order_relaxed); }
    void reset_query_count() const { query_count_.store(0, std::memory_order_relaxed); }

  protected:
    virtual uint64_t evaluate(const Bytes& input) const = 0;

    pcip::ChallengeSpace space_;
    mutable std::atomic<uint64_t> query_count_{0};
};

// Explicit function table over a finite domain of byte strings. Supports
// enumeration of all |Y|^|X| tables on small domains.
class OracleTable : public RandomOracle {
  public:
    OracleTable(pcip::ChallengeSpace space, std::vector<Bytes> domain, std::vector<uint64_t> values);

    // Table with every point mapped by `index` in mixed radix |Y|^|X|:
    // point j gets digit j of index. Enumerating index over
    // [0, |Y|^|X|) visits every table exactly once.
    static OracleTable from_index(pcip::ChallengeSpace space, std::vector<Bytes> domain, uint64_t index);

    static uint64_t table_count(uint64_t range_cardinality, size_t domain_size);

    const std::vector<Bytes>& domain() const { return domain_; }
    const std::vector<uint64_t>& values() const { return values_; }

    // Copy with the point `input` remapped to `value` (adds the point if
    // absent from the domain).
    OracleTable with_point(const Bytes& input, uint64_t value) const;

    bool operator==(const OracleTable& other) const {
        return values_ == other.values_ && domain_ == other.domain_;
    }

  protected:
    uint64_t evaluate(const Bytes& input) const override;

  private:
    std::vector<Bytes> domain_;
    std::vector<uint64_t> values_;
    std::map<Bytes, size_t> index_;
};

// Hash-instantiated oracle: SHAKE256 over "FSQ/v1/chal" || key || input,
// rejection-sampled into the challenge space (exactly uniform per block).
class XofOracle : public RandomOracle {
  public:
    XofOracle(pcip::ChallengeSpace space, Bytes key = {})
        : RandomOracle(space), key_(std::move(key)) {}

    const Bytes& key() const { return key_; }

  protected:
    uint64_t evaluate(const Bytes& input) const override;

  private:
    Bytes key_;
};

// Constant oracle, for edge-case tests.
class ConstantOracle : public RandomOracle {
  public:
    ConstantOracle(pcip::ChallengeSpace space, uint64_t value)
        : RandomOracle(space), value_(value) {
        if (value >= space.cardinality) throw std::invalid_argument("ConstantOracle: value out of range");
    }

  protected:
    uint64_t evaluate(const Bytes&) const override { return value_; }

  private:
    uint64_t value_;
};

// Lazily filled table: fresh uniform value per new point, drawn from a
// seeded XOF keyed on the point. Used for Monte-Carlo sampling of H where
// materializing a table is impossible.
class LazyOracle : public RandomOracle {
  public:
    LazyOracle(pcip::ChallengeSpace space, std::string_view context, uint64_t seed)
        : RandomOracle(space), context_(to_bytes(context)), seed_(seed) {}

  protected:
    uint64_t evaluate(const Bytes& input) const override;

  private:
    Bytes context_;
    uint64_t seed_;
};

}  // namespace fsq::rom
