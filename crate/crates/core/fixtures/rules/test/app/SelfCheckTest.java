package app;

import org.junit.Test;

import static org.junit.Assert.assertEquals;
import static org.junit.Assert.assertTrue;

public class SelfCheckTest {
    @Test
    public void comparesValueToItself() {
        int value = 9;
        assertEquals(value, value);
    }

    @Test
    public void assertsLiteralTruth() {
        assertTrue(true);
    }

    @Test
    public void comparesDistinctValues() {
        int value = 9;
        int expected = 9;
        assertEquals(expected, value);
    }
}
