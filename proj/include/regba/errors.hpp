#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace regba {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    std::size_t line;
    ParseError(std::size_t line, const std::string& reason)
        : Error("parse error at line " + std::to_string(line) + ": " + reason), line(line) {}
};

struct InvalidAutomaton : Error {
    using Error::Error;
};

struct EmptyLanguage : Error {
    EmptyLanguage() : Error("automaton accepts no word") {}
};

struct NotDeterministic : Error {
    NotDeterministic() : Error("automaton is not deterministic") {}
};

struct NotComplete : Error {
    NotComplete() : Error("automaton is not complete") {}
};

struct NotWeak : Error {
    NotWeak() : Error("automaton is not weak") {}
};

struct NotClosed : Error {
    NotClosed() : Error("automaton is not closed") {}
};

struct RadixMismatch : Error {
    RadixMismatch() : Error("operands have different radix vectors") {}
};

struct MixedRadix : Error {
    MixedRadix() : Error("operation requires a uniform radix") {}
};

struct BadCoordinates : Error {
    using Error::Error;
};

struct UnknownState : Error {
    UnknownState(const std::string& name) : Error("unknown state: " + name) {}
};

struct UnknownSink : Error {
    UnknownSink() : Error("given states do not form a sink component") {}
};

struct OutOfRange : Error {
    using Error::Error;
};

struct RangeViolation : Error {
    using Error::Error;
};

struct NotAFunction : Error {
    NotAFunction() : Error("value set is not the graph of a total function") {}
};

struct EmptyFiber : Error {
    using Error::Error;
};

struct NotAffineSink : Error {
    using Error::Error;
};

struct NotNowhereDense : Error {
    using Error::Error;
};

struct ResourceCap : Error {
    using Error::Error;
};

}  // namespace regba
