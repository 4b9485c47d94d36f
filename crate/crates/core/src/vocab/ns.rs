//! Namespace and term IRIs.
//!
//! Every IRI the toolkit emits on its own account is declared here. The
//! namespaces are:
//!
//! | prefix           | namespace                                             |
//! |------------------|-------------------------------------------------------|
//! | `daq`            | `http://purl.org/eis/vocab/daq#`                      |
//! | `dqm`            | `http://www.diachron-fp7.eu/dqm#` (shipped metrics)   |
//! | `qb`             | `http://purl.org/linked-data/cube#`                   |
//! | `sdmx-attribute` | `http://purl.org/linked-data/sdmx/2009/attribute#`    |
//! | `dc`             | `http://purl.org/dc/terms/`                           |
//! | `rdf`            | `http://www.w3.org/1999/02/22-rdf-syntax-ns#`         |
//! | `rdfs`           | `http://www.w3.org/2000/01/rdf-schema#`               |
//! | `owl`            | `http://www.w3.org/2002/07/owl#`                      |
//! | `xsd`            | `http://www.w3.org/2001/XMLSchema#`                   |
//! | `unit`           | `http://qudt.org/vocab/unit#`                         |

pub const DAQ: &str = "http://purl.org/eis/vocab/daq#";
pub const DQM: &str = "http://www.diachron-fp7.eu/dqm#";
pub const QB: &str = "http://purl.org/linked-data/cube#";
pub const SDMX_ATTRIBUTE: &str = "http://purl.org/linked-data/sdmx/2009/attribute#";
pub const DC: &str = "http://purl.org/dc/terms/";
pub const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
pub const RDFS: &str = "http://www.w3.org/2000/01/rdf-schema#";
pub const OWL: &str = "http://www.w3.org/2002/07/owl#";
pub const XSD: &str = "http://www.w3.org/2001/XMLSchema#";
pub const UNIT: &str = "http://qudt.org/vocab/unit#";

/// Prefix bindings used by serializers.
pub const PREFIXES: &[(&str, &str)] = &[
    ("daq", DAQ),
    ("dqm", DQM),
    ("qb", QB),
    ("sdmx-attribute", SDMX_ATTRIBUTE),
    ("dc", DC),
    ("rdf", RDF),
    ("rdfs", RDFS),
    ("owl", OWL),
    ("xsd", XSD),
    ("unit", UNIT),
];

macro_rules! iri {
    ($($(#[$m:meta])* $name:ident = $ns:literal $local:literal;)*) => {
        $($(#[$m])* pub const $name: &str = concat!($ns, $local);)*
    };
}

iri! {
    DAQ_QUALITY_GRAPH = "http://purl.org/eis/vocab/daq#" "QualityGraph";
    DAQ_CATEGORY = "http://purl.org/eis/vocab/daq#" "Category";
    DAQ_DIMENSION = "http://purl.org/eis/vocab/daq#" "Dimension";
    DAQ_METRIC_CLASS = "http://purl.org/eis/vocab/daq#" "Metric";
    DAQ_HAS_DIMENSION = "http://purl.org/eis/vocab/daq#" "hasDimension";
    DAQ_HAS_METRIC = "http://purl.org/eis/vocab/daq#" "hasMetric";
    DAQ_HAS_OBSERVATION = "http://purl.org/eis/vocab/daq#" "hasObservation";
    DAQ_METRIC = "http://purl.org/eis/vocab/daq#" "metric";
    DAQ_COMPUTED_ON = "http://purl.org/eis/vocab/daq#" "computedOn";
    DAQ_VALUE = "http://purl.org/eis/vocab/daq#" "value";
    DAQ_EXPECTED_DATA_TYPE = "http://purl.org/eis/vocab/daq#" "expectedDataType";
    DAQ_DSD = "http://purl.org/eis/vocab/daq#" "dsd";
    DAQ_REQUIRES = "http://purl.org/eis/vocab/daq#" "requires";

    QB_DATA_SET = "http://purl.org/linked-data/cube#" "DataSet";
    QB_OBSERVATION = "http://purl.org/linked-data/cube#" "Observation";
    QB_OBSERVATION_GROUP = "http://purl.org/linked-data/cube#" "ObservationGroup";
    QB_OBSERVATION_PROP = "http://purl.org/linked-data/cube#" "observation";
    QB_DATA_SET_PROP = "http://purl.org/linked-data/cube#" "dataSet";
    QB_STRUCTURE = "http://purl.org/linked-data/cube#" "structure";
    QB_DATA_STRUCTURE_DEFINITION = "http://purl.org/linked-data/cube#" "DataStructureDefinition";
    QB_DIMENSION_PROPERTY = "http://purl.org/linked-data/cube#" "DimensionProperty";
    QB_MEASURE_PROPERTY = "http://purl.org/linked-data/cube#" "MeasureProperty";
    QB_ATTRIBUTE_PROPERTY = "http://purl.org/linked-data/cube#" "AttributeProperty";
    QB_COMPONENT = "http://purl.org/linked-data/cube#" "component";
    QB_COMPONENT_SPECIFICATION = "http://purl.org/linked-data/cube#" "ComponentSpecification";
    QB_DIMENSION = "http://purl.org/linked-data/cube#" "dimension";
    QB_MEASURE = "http://purl.org/linked-data/cube#" "measure";
    QB_ATTRIBUTE = "http://purl.org/linked-data/cube#" "attribute";
    QB_ORDER = "http://purl.org/linked-data/cube#" "order";
    QB_COMPONENT_REQUIRED = "http://purl.org/linked-data/cube#" "componentRequired";

    SDMX_UNIT_MEASURE = "http://purl.org/linked-data/sdmx/2009/attribute#" "unitMeasure";
    DC_DATE = "http://purl.org/dc/terms/" "date";

    RDF_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#" "type";
    RDF_PROPERTY = "http://www.w3.org/1999/02/22-rdf-syntax-ns#" "Property";
    RDF_LANG_STRING = "http://www.w3.org/1999/02/22-rdf-syntax-ns#" "langString";
    RDFS_SUB_CLASS_OF = "http://www.w3.org/2000/01/rdf-schema#" "subClassOf";
    RDFS_SUB_PROPERTY_OF = "http://www.w3.org/2000/01/rdf-schema#" "subPropertyOf";
    RDFS_LABEL = "http://www.w3.org/2000/01/rdf-schema#" "label";
    RDFS_COMMENT = "http://www.w3.org/2000/01/rdf-schema#" "comment";
    RDFS_DOMAIN = "http://www.w3.org/2000/01/rdf-schema#" "domain";
    RDFS_RANGE = "http://www.w3.org/2000/01/rdf-schema#" "range";
    RDFS_CLASS = "http://www.w3.org/2000/01/rdf-schema#" "Class";
    OWL_INVERSE_OF = "http://www.w3.org/2002/07/owl#" "inverseOf";
    OWL_OBJECT_PROPERTY = "http://www.w3.org/2002/07/owl#" "ObjectProperty";
    OWL_DATATYPE_PROPERTY = "http://www.w3.org/2002/07/owl#" "DatatypeProperty";

    XSD_STRING = "http://www.w3.org/2001/XMLSchema#" "string";
    XSD_BOOLEAN = "http://www.w3.org/2001/XMLSchema#" "boolean";
    XSD_INTEGER = "http://www.w3.org/2001/XMLSchema#" "integer";
    XSD_DECIMAL = "http://www.w3.org/2001/XMLSchema#" "decimal";
    XSD_DOUBLE = "http://www.w3.org/2001/XMLSchema#" "double";
    XSD_FLOAT = "http://www.w3.org/2001/XMLSchema#" "float";
    XSD_DATE = "http://www.w3.org/2001/XMLSchema#" "date";
    XSD_DATE_TIME = "http://www.w3.org/2001/XMLSchema#" "dateTime";
    XSD_DURATION = "http://www.w3.org/2001/XMLSchema#" "duration";
    XSD_NON_NEGATIVE_INTEGER = "http://www.w3.org/2001/XMLSchema#" "nonNegativeInteger";

    DQM_RDF_AVAILABILITY = "http://www.diachron-fp7.eu/dqm#" "RDFAvailabilityMetric";
    DQM_ENDPOINT_AVAILABILITY = "http://www.diachron-fp7.eu/dqm#" "EndPointAvailabilityMetric";
    DQM_ENDPOINT_LATENCY = "http://www.diachron-fp7.eu/dqm#" "EndPointLatencyMetric";
    DQM_DEREFERENCEABILITY = "http://www.diachron-fp7.eu/dqm#" "DereferenceabilityMetric";
    DQM_EXTERNAL_LINKAGE = "http://www.diachron-fp7.eu/dqm#" "ExternalLinkageMetric";
    DQM_DATATYPE_CONSISTENCY = "http://www.diachron-fp7.eu/dqm#" "DatatypeConsistencyMetric";
    DQM_LABELED_RESOURCES = "http://www.diachron-fp7.eu/dqm#" "LabeledResourceMetric";
    DQM_ACCESSIBILITY = "http://www.diachron-fp7.eu/dqm#" "Accessibility";
    DQM_AVAILABILITY = "http://www.diachron-fp7.eu/dqm#" "Availability";

    /// Unit attached to every duration-valued observation.
    UNIT_SECOND = "http://qudt.org/vocab/unit#" "SecondTime";
}

pub const NUMERIC_DATATYPES: &[&str] = &[
    XSD_INTEGER,
    XSD_DECIMAL,
    XSD_DOUBLE,
    XSD_FLOAT,
    XSD_NON_NEGATIVE_INTEGER,
];

/// Datatypes accepted as a metric's `daq:expectedDataType`.
pub const RECOGNIZED_VALUE_DATATYPES: &[&str] = &[
    XSD_BOOLEAN,
    XSD_DOUBLE,
    XSD_DECIMAL,
    XSD_FLOAT,
    XSD_INTEGER,
    XSD_NON_NEGATIVE_INTEGER,
    XSD_DURATION,
    XSD_DATE_TIME,
    XSD_STRING,
];
