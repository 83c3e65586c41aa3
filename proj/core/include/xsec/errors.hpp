#pragma once

#include <stdexcept>
#include <string>

namespace xsec {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class SyntaxError : public Error {
public:
    SyntaxError(const std::string& msg, std::size_t pos)
        : Error(msg + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
    std::size_t position;
};

class UndeclaredTypeError : public Error {
public:
    explicit UndeclaredTypeError(const std::string& name)
        : Error("undeclared element type: " + name) {}
};

class NoRootError : public Error {
public:
    NoRootError() : Error("DTD has no declarations; cannot determine root") {}
};

class UnreachableTypeError : public Error {
public:
    explicit UnreachableTypeError(const std::string& name)
        : Error("element type unreachable from root: " + name) {}
};

class UnknownEdgeError : public Error {
public:
    UnknownEdgeError(const std::string& parent, const std::string& child)
        : Error("annotation on non-edge (" + parent + ", " + child + ")") {}
};

class FragmentError : public Error {
public:
    explicit FragmentError(const std::string& msg) : Error(msg) {}
};

class DuplicateAnnotationError : public Error {
public:
    DuplicateAnnotationError(const std::string& parent, const std::string& child)
        : Error("duplicate annotation for edge (" + parent + ", " + child + ")") {}
};

class EmptySetError : public Error {
public:
    EmptySetError() : Error("fusion over an empty set of element types") {}
};

class NonTerminatingError : public Error {
public:
    explicit NonTerminatingError(const std::string& name)
        : Error("element type has no finite derivation: " + name) {}
};

class UnsupportedFeatureError : public Error {
public:
    explicit UnsupportedFeatureError(const std::string& msg) : Error(msg) {}
};

} // namespace xsec
