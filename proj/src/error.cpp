#include "scigraph/error.hpp"

namespace scigraph {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::InvalidLabel: return "InvalidLabel";
    case Errc::InvalidRelType: return "InvalidRelType";
    case Errc::MissingNameProperty: return "MissingNameProperty";
    case Errc::NonFiniteFloat: return "NonFiniteFloat";
    case Errc::UnknownNode: return "UnknownNode";
    case Errc::IncompatibleEndpoints: return "IncompatibleEndpoints";
    case Errc::CitesSelfLoop: return "CitesSelfLoop";
    case Errc::GraphFrozen: return "GraphFrozen";
    case Errc::TypeMismatch: return "TypeMismatch";
    case Errc::InvalidThreshold: return "InvalidThreshold";
    case Errc::NotAnArticle: return "NotAnArticle";
    case Errc::NotAJournal: return "NotAJournal";
    case Errc::NoArticles: return "NoArticles";
    case Errc::SelfExceedsTotal: return "SelfExceedsTotal";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NegativeInput: return "NegativeInput";
    case Errc::NegativeElasticity: return "NegativeElasticity";
    case Errc::NonPositiveScale: return "NonPositiveScale";
    case Errc::ZeroInput: return "ZeroInput";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::UndeclaredVariable: return "UndeclaredVariable";
    case Errc::UnknownColumn: return "UnknownColumn";
    case Errc::NonIntegerX: return "NonIntegerX";
    case Errc::NonNumericColumn: return "NonNumericColumn";
    case Errc::EmptyTable: return "EmptyTable";
    case Errc::JournalNotFound: return "JournalNotFound";
    case Errc::SnapshotFormat: return "SnapshotFormat";
    case Errc::IoError: return "IoError";
  }
  return "UnknownError";
}

}  // namespace scigraph
