#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace treegraph {

// Base class for all errors raised by the library. Structural violations
// found by forest verification are NOT exceptions; see forest.hpp.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class UnknownNode : public Error {
public:
    explicit UnknownNode(const std::string& msg) : Error(msg) {}
};

class UnknownEdge : public Error {
public:
    explicit UnknownEdge(const std::string& msg) : Error(msg) {}
};

// CSV / config file errors carry a 1-based line number.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& msg)
        : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Pattern language errors carry a 0-based character offset into the query text.
class SyntaxError : public Error {
public:
    SyntaxError(std::size_t pos, const std::string& msg)
        : Error("at position " + std::to_string(pos) + ": " + msg), pos_(pos) {}
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

class NotIndexed : public Error {
public:
    explicit NotIndexed(const std::string& msg) : Error(msg) {}
};

class NoIndex : public Error {
public:
    explicit NoIndex(const std::string& msg) : Error(msg) {}
};

class NotInScope : public Error {
public:
    explicit NotInScope(const std::string& msg) : Error(msg) {}
};

class MalformedDewey : public Error {
public:
    explicit MalformedDewey(const std::string& msg) : Error(msg) {}
};

class InfeasibleConfig : public Error {
public:
    explicit InfeasibleConfig(const std::string& msg) : Error(msg) {}
};

class WouldCreateCycle : public Error {
public:
    explicit WouldCreateCycle(const std::string& msg) : Error(msg) {}
};

class WouldCreateMultiParent : public Error {
public:
    explicit WouldCreateMultiParent(const std::string& msg) : Error(msg) {}
};

class ParentRequired : public Error {
public:
    explicit ParentRequired(const std::string& msg) : Error(msg) {}
};

class BrokenSiblingChain : public Error {
public:
    explicit BrokenSiblingChain(const std::string& msg) : Error(msg) {}
};

}  // namespace treegraph
