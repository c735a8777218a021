#ifndef SIDCERT_ERROR_HPP
#define SIDCERT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace sidcert {

/** Base class for all library errors. */
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/** A subset refers to vertices outside the ground set. */
class InvalidSubsetError : public Error {
public:
    using Error::Error;
};

/** Two objects live over different ground sets. */
class GroundMismatchError : public Error {
public:
    using Error::Error;
};

/** An operation received a complex of the wrong arity. */
class ArityError : public Error {
public:
    using Error::Error;
};

/** A gluing or coupling map is not injective / not well formed. */
class InvalidMapError : public Error {
public:
    using Error::Error;
};

/** A reflection or gluing referenced a set that is not an edge. */
class NotAnEdgeError : public Error {
public:
    using Error::Error;
};

/** A configured size cap (ground set or state space) was exceeded. */
class SizeCapError : public Error {
public:
    using Error::Error;
};

/** A certificate names invalid generators or does not recombine. */
class MalformedCertificateError : public Error {
public:
    using Error::Error;
};

/** A constructive route was requested for a trace outside its class. */
class NotInClassError : public Error {
public:
    using Error::Error;
};

/** Coupling factors disagree on the shared marginal. */
class JointFactorMismatchError : public Error {
public:
    using Error::Error;
};

/** A measure is not absolutely continuous w.r.t. the reference. */
class SupportError : public Error {
public:
    using Error::Error;
};

/** A target graph has no edges where one is required. */
class EmptyTargetError : public Error {
public:
    using Error::Error;
};

/** An operation received out-of-range or inconsistent parameters. */
class ParameterError : public Error {
public:
    using Error::Error;
};

/** A frame is not bipartite, or the requested coloring is improper. */
class BipartitionError : public Error {
public:
    using Error::Error;
};

/** Two sets required to be disjoint are not. */
class DisjointnessError : public Error {
public:
    using Error::Error;
};

/** A graph required to be a tree or forest is not one. */
class NotAForestError : public Error {
public:
    using Error::Error;
};

/** A structured text file could not be parsed. */
class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace sidcert

#endif
