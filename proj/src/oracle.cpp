#include "fsq/oracle.hpp"

#include <stdexcept>

namespace fsq::rom {

OracleTable::OracleTable(pcip::ChallengeSpace space, std::vector<Bytes> domain,
                         std::vector<uint64_t> values)
    : RandomOracle(space), domain_(std::move(domain)), values_(std::move(values)) {
    if (domain_.size() != values_.size())
        throw std::invalid_argument("OracleTable: domain/value size mismatch");
    for (uint64_t v : values_)
        if (v >= space_.cardinality) throw std::invalid_argument("OracleTable: value out of range");
    for (size_t i = 0; i < domain_.size(); ++i) {
        if (!index_.emplace(domain_[i], i).second)
            throw std::invalid_argument("OracleTable: duplicate domain point");
    }
}

OracleTable OracleTable::from_index(pcip::ChallengeSpace space, std::vector<Bytes> domain,
                                    uint64_t index) {
    std::vector<uint64_t> values(domain.size());
    for (size_t i = 0; i < domain.size(); ++i) {
        values[i] = index % space.cardinality;
        index /= space.cardinality;
    }
    return OracleTable(space, std::move(domain), std::move(values));
}

uint64_t OracleTable::table_count(uint64_t range_cardinality, size_t domain_size) {
    uint64_t count = 1;
    for (size_t i = 0; i < domain_size; ++i) {
        if (count > UINT64_MAX / range_cardinality)
            throw std::overflow_error("OracleTable: table count overflow");
        count *= range_cardinality;
    }
    return count;
}

OracleTable OracleTable::with_point(const Bytes& input, uint64_t value) const {
    auto domain = domain_;
    auto values = values_;
    auto it = index_.find(input);
    if (it == index_.end()) {
        domain.push_back(input);
        values.push_back(value);
    } else {
        values[it->second] = value;
    }
    return OracleTable(space_, std::move(domain), std::move(values));
}

uint64_t OracleTable::evaluate(const Bytes& input) const {
    auto it = index_.find(input);
    if (it == index_.end()) throw std::out_of_range("OracleTable: input outside domain");
    return values_[it->second];
}

uint64_t XofOracle::evaluate(const Bytes& input) const {
    Bytes material = to_bytes("FSQ/v1/chal");
    append(material, key_);
    append(material, input);
    XofStream stream(std::move(material));
    return stream.uniform_below(space_.cardinality);
}

uint64_t LazyOracle::evaluate(const Bytes& input) const {
    Bytes material = frame({to_bytes("FSQ/v1/lazy"), context_, u64_be(seed_)});
    append(material, input);
    XofStream stream(std::move(material));
    return stream.uniform_below(space_.cardinality);
}

}  // namespace fsq::rom
